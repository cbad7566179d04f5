"""Restricted Delaunay and witness complexes on smoothed hypercubes."""

from ._core import *  # noqa: F401,F403
from ._core import GeometryError, Report, Scene, SceneParams  # noqa: F401
