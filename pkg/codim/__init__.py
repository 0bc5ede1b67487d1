from codim.exceptions import (
    BaseCodimException,
    CatalogError,
    NotOnModelError,
    RankDeficiencyError,
    ScenarioError,
)

__all__ = [
    "BaseCodimException",
    "CatalogError",
    "NotOnModelError",
    "RankDeficiencyError",
    "ScenarioError",
]
