"""Regular languages whose omega-powers are complete for Delta^0_2 Wagner classes.

The package builds the languages, their omega-powers as Buchi and weak
deterministic automata, and classifies the results exactly.
"""

__version__ = "0.1.0"

from .constructions import (  # noqa: E402
    ConstructionRecipe,
    build_for_class,
    characterization_dwa,
    recipe_for_class,
    supported_classes,
)
from .omega import DWA, NBW, Lasso, omega_power_nbw  # noqa: E402
from .wagner import WagnerClass, classify, classify_full  # noqa: E402

__all__ = [
    "ConstructionRecipe",
    "DWA",
    "Lasso",
    "NBW",
    "WagnerClass",
    "build_for_class",
    "characterization_dwa",
    "classify",
    "classify_full",
    "omega_power_nbw",
    "recipe_for_class",
    "supported_classes",
]
