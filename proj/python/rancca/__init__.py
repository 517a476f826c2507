"""Canonical correlation analysis toolkit for RAN KPI data."""

from rancca._core import *  # noqa: F401,F403
from rancca._core import __version__  # noqa: F401
