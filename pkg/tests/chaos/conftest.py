def pytest_configure(config):
    config.addinivalue_line("markers", "chaos: Step-cap exhaustion and malformed-input tests")
