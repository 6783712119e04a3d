"""Computads, presentations of categories and groupoids, and their topology."""
from .errors import *  # noqa: F401,F403
from .graph import Arrow, Graph, ReflexiveGraph, Subgraph
from .free import INFINITE, Path, Walk
from .computad import (
    Computad2,
    GroupoidalComputad2,
    ReflexiveComputad2,
    SubComputad,
    TwoCell,
    WordPresentation,
    computad,
)
from .groups import DEFAULT_LIMITS, GroupPresentation, Limits, No, Unknown, Yes
from .twodim import Computad3, ThreeCell, TwoCellWord, WhiskerFactor
from .cmpformat import CmpDocument, format_document, parse, parse_file
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "Arrow", "Graph", "ReflexiveGraph", "Subgraph", "INFINITE", "Path", "Walk",
    "Computad2", "GroupoidalComputad2", "ReflexiveComputad2", "SubComputad", "TwoCell",
    "WordPresentation", "computad", "DEFAULT_LIMITS", "GroupPresentation", "Limits",
    "No", "Unknown", "Yes", "Computad3", "ThreeCell", "TwoCellWord", "WhiskerFactor",
    "CmpDocument", "format_document", "parse", "parse_file", "BACKEND",
]
