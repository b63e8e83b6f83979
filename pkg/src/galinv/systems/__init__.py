"""System catalog, declarative language, and classification."""

from .catalog import COVARIANT_SYSTEMS, catalog, catalog_names, catalog_text
from .dsl import parse, print_system
from .model import Equation, FieldSystem, RepSpec
