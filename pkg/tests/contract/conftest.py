def pytest_configure(config):
    config.addinivalue_line(
        "markers", "contract: Registry and table file format contracts"
    )
