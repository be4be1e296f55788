"""
Recipe Book Utility

Loads the built-in experiment recipes from the JSON recipe book and turns
each entry into an ExperimentRecipe.
"""

import json
import logging
import os
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from core.distribution import DistributionSet
from core.errors import GridLabError, RecipeError
from core.grid import GridSpec
from core.layout import PatternLayout
from solver.config import SolveConfig
from .paths import asset_path

logger = logging.getLogger(__name__)

KINDS = ('enumerate-classify', 'sweep', 'pigeonhole', 'solve', 'distribution-check',
         'checks-then-solve', 'stripes', 'smtlib')


def get_recipe_path() -> str:
    """Get the path to the recipe book file."""
    return asset_path('recipes', 'recipes.json')


@dataclass(frozen=True)
class ExperimentRecipe:
    """
    One reproducible experiment.

    Parameters
    ----------
    name : str
        Unique name, used by `repro <name>`.
    kind : str
        Harness that runs it, one of KINDS.
    description : str
        One-line summary shown by `repro --list`.
    gating : bool
        Part of `repro --all`; non-gating recipes only run with --include-slow.
    spec : GridSpec, optional
        Grid for single-instance recipes.
    layout : PatternLayout, optional
        Shift layout, when the recipe uses one.
    distribution : str, optional
        'ones' or a path relative to assets/.
    engine : dict
        SolveConfig overrides (mode, timeout, ...).
    expected : dict
        Expected outcome, read by the harness of `kind`.
    params : dict
        Extra harness parameters.
    aliases : tuple of str
        Other names `repro` accepts for this recipe.
    """
    name: str
    kind: str
    description: str = ''
    gating: bool = True
    spec: Optional[GridSpec] = None
    layout: Optional[PatternLayout] = None
    distribution: Optional[str] = None
    engine: Dict[str, Any] = field(default_factory=dict)
    expected: Dict[str, Any] = field(default_factory=dict)
    params: Dict[str, Any] = field(default_factory=dict)
    aliases: Tuple[str, ...] = ()

    @classmethod
    def from_dict(cls, entry: Dict[str, Any]) -> 'ExperimentRecipe':
        name = entry.get('name')
        if not name:
            raise RecipeError(f"Recipe entry without a name: {entry!r}")
        try:
            kind = entry['kind']
            if kind not in KINDS:
                raise RecipeError(f"Recipe {name!r} has unknown kind {kind!r}")
            spec = GridSpec(*entry['spec']) if 'spec' in entry else None
            layout = PatternLayout(**entry['layout']) if 'layout' in entry else None
            engine = dict(entry.get('engine', {}))
            SolveConfig(**engine)
            aliases = entry.get('aliases', [])
            if isinstance(aliases, str) or not all(isinstance(a, str) and a for a in aliases):
                raise RecipeError(f"Recipe {name!r} has malformed aliases {aliases!r}")
        except RecipeError:
            raise
        except (GridLabError, KeyError, TypeError, ValueError) as exc:
            raise RecipeError(f"Malformed recipe {name!r}: {exc}") from None
        return cls(name=name, kind=kind, description=entry.get('description', ''),
                   gating=bool(entry.get('gating', True)), spec=spec, layout=layout,
                   distribution=entry.get('distribution'), engine=engine,
                   expected=dict(entry.get('expected', {})), params=dict(entry.get('params', {})),
                   aliases=tuple(aliases))

    def solve_config(self, base: Optional[SolveConfig] = None, **overrides) -> SolveConfig:
        """Recipe engine settings over `base`, then explicit overrides."""
        cfg = (base or SolveConfig()).with_(**self.engine)
        return cfg.with_(**{k: v for k, v in overrides.items() if v is not None})

    def load_distribution(self) -> Optional[DistributionSet]:
        """The recipe's distribution, sized to its spec and layout."""
        if self.distribution is None:
            return None
        if self.spec is None or self.layout is None:
            raise RecipeError(f"Recipe {self.name!r} needs spec and layout for a distribution")
        x, y = self.layout.blocks(self.spec)
        if self.distribution == 'ones':
            return DistributionSet.ones(x, y, self.layout.subgrid, self.spec.colors)
        from .data_io import read_distribution

        return read_distribution(asset_path(self.distribution), self.layout.subgrid)


class RecipeBook:
    """Class to manage the experiment recipe book."""

    def __init__(self, path: Optional[str] = None):
        self.path = path or get_recipe_path()
        self.recipes: Dict[str, ExperimentRecipe] = {}
        self.aliases: Dict[str, str] = {}
        self.load()

    def load(self):
        """Load recipes from the JSON file."""
        if not os.path.exists(self.path):
            logger.warning("RecipeBook: file not found at %s, using an empty book", self.path)
            return
        with open(self.path, 'r', encoding='utf-8') as f:
            try:
                data = json.load(f)
            except json.JSONDecodeError as exc:
                raise RecipeError(f"RecipeBook: {self.path} is not valid JSON: {exc}") from None
        recipes, aliases = {}, {}
        for entry in data.get('recipes', []):
            recipe = ExperimentRecipe.from_dict(entry)
            names = (recipe.name,) + recipe.aliases
            for name in names:
                if name in recipes or name in aliases or names.count(name) > 1:
                    raise RecipeError(f"RecipeBook: duplicate recipe name {name!r}")
            aliases.update((alias, recipe.name) for alias in recipe.aliases)
            recipes[recipe.name] = recipe
        self.recipes, self.aliases = recipes, aliases
        logger.info("RecipeBook: loaded %d recipes from %s", len(recipes), self.path)

    def get(self, name: str) -> ExperimentRecipe:
        """
        Look a recipe up by name or alias.

        Raises
        ------
        RecipeError
            If no recipe has that name.
        """
        try:
            return self.recipes[self.aliases.get(name, name)]
        except KeyError:
            raise RecipeError(f"Unknown recipe {name!r}; known: {', '.join(self.names())}") from None

    def names(self) -> List[str]:
        return list(self.recipes)

    def gating(self) -> List[ExperimentRecipe]:
        return [r for r in self.recipes.values() if r.gating]

    def all(self) -> List[ExperimentRecipe]:
        return list(self.recipes.values())

    def __contains__(self, name):
        return name in self.recipes or name in self.aliases

    def __len__(self):
        return len(self.recipes)


# Singleton instance for easy access
_book_instance = None


def get_recipe_book() -> RecipeBook:
    """Get the singleton RecipeBook instance."""
    global _book_instance
    if _book_instance is None:
        _book_instance = RecipeBook()
    return _book_instance
