"""Exact extended affine Hecke algebras for principal-series blocks and their parameter side."""
from .exact_rings import Cyclo, VLaurent, VRational, TorusFunction, TorusRational, TorusPoint, ConfigError
from .root_datum import BasedRootDatum
from .bernstein_hecke import HeckeAlgebra
from .catalog import load_catalog, default_catalog

__all__ = ["Cyclo", "VLaurent", "VRational", "TorusFunction", "TorusRational", "TorusPoint",
           "ConfigError", "BasedRootDatum", "HeckeAlgebra", "load_catalog", "default_catalog"]
__version__ = "0.1.0"
