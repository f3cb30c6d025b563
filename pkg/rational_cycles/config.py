"""
Run configuration.

Values come from, in order of precedence: explicit arguments (CLI flags),
environment variables (a .env file is loaded if present), built-in
defaults.

  CYCLES_DEPTH       default search depth            (500)
  CYCLES_STEP_CAP    orbit step cap                  (100000)
  CYCLES_JOBS        worker processes                (CPU count)
  CYCLES_OUTPUT_DIR  directory for relative --out    (.)
  CYCLES_LOG_LEVEL   logging level name              (INFO)
"""

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Tuple

from dotenv import load_dotenv

from rational_cycles.census import is_admissible
from rational_cycles.rational_core import DEFAULT_STEP_CAP

load_dotenv()

DEFAULT_DEPTH = 500
FORMATS = ("human", "jsonl", "csv")


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"Environment variable {name}={raw!r} is not an integer")


@dataclass(frozen=True)
class RunConfig:
    """Validated settings shared by the CLI subcommands."""

    k: Optional[int] = None
    k_min: int = 1
    k_max: Optional[int] = None
    depth: int = DEFAULT_DEPTH
    step_cap: int = DEFAULT_STEP_CAP
    jobs: int = 1
    depths: Tuple[int, ...] = ()
    output_path: Optional[Path] = None
    format: str = "human"
    log_level: str = "INFO"

    def __post_init__(self):
        if self.depth < 1:
            raise ValueError(f"depth must be >= 1, got {self.depth}")
        if self.step_cap < 1:
            raise ValueError(f"step_cap must be >= 1, got {self.step_cap}")
        if self.jobs < 1:
            raise ValueError(f"jobs must be >= 1, got {self.jobs}")
        if self.k is not None and not is_admissible(self.k):
            raise ValueError(f"k={self.k} must be ≡ 1 or 5 (mod 6)")
        if self.k_min < 1:
            raise ValueError(f"k_min must be >= 1, got {self.k_min}")
        if self.k_max is not None and self.k_max < self.k_min:
            raise ValueError(f"k_max={self.k_max} is below k_min={self.k_min}")
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}, got {self.format!r}")
        depths = tuple(self.depths)
        if any(d < 1 for d in depths) or any(b <= a for a, b in zip(depths, depths[1:])):
            raise ValueError(f"depths must be positive and strictly increasing: {depths}")
        object.__setattr__(self, "depths", depths)


def parse_depths(text: Optional[str]) -> Tuple[int, ...]:
    """'20,50,100' -> (20, 50, 100)."""
    if not text:
        return ()
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise ValueError(f"--depths must be a comma list of integers, got {text!r}")


def load_config(
    *,
    k: Optional[int] = None,
    k_min: Optional[int] = None,
    k_max: Optional[int] = None,
    depth: Optional[int] = None,
    step_cap: Optional[int] = None,
    jobs: Optional[int] = None,
    depths: Sequence[int] = (),
    output_path: Optional[str] = None,
    format: Optional[str] = None,
    log_level: Optional[str] = None,
) -> RunConfig:
    """Resolve a RunConfig from arguments, then environment, then defaults."""
    out = None
    if output_path is not None:
        out = Path(output_path)
        if not out.is_absolute():
            out = Path(os.environ.get("CYCLES_OUTPUT_DIR", ".")) / out
    return RunConfig(
        k=k,
        k_min=k_min if k_min is not None else 1,
        k_max=k_max,
        depth=depth if depth is not None else _env_int("CYCLES_DEPTH", DEFAULT_DEPTH),
        step_cap=step_cap if step_cap is not None else _env_int("CYCLES_STEP_CAP", DEFAULT_STEP_CAP),
        jobs=jobs if jobs is not None else _env_int("CYCLES_JOBS", os.cpu_count() or 1),
        depths=tuple(depths),
        output_path=out,
        format=format if format is not None else "human",
        log_level=(log_level or os.environ.get("CYCLES_LOG_LEVEL", "INFO")).upper(),
    )
