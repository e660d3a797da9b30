"""Reversible pebbling numbers and strategies for rooted trees."""

from ._revpeb import *  # noqa: F401,F403
from ._revpeb import __doc__  # noqa: F401
