"""Country-level scientometric indicators and collaboration networks."""

from pathlib import Path

from . import _core
from ._core import *  # noqa: F401,F403
from ._core import ScimetricsError  # noqa: F401

__version__ = "0.1.0"

DATA_DIR = Path(__file__).resolve().parent / "data"
_core._set_data_dir(str(DATA_DIR))
