"""Lazily computed bundle of everything known about one instance.

An :class:`Analysis` wraps either a computed normal filtration or an ingested
Hilbert table, and memoizes the table, the fits, the coefficient bundle and
the monomial good-pair search.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional

from .errors import InputError
from .hilbert import (
    DEFAULT_BASE,
    DEFAULT_WINDOW,
    BhattacharyaPoly,
    CoeffBundle,
    HilbertTable,
    coefficient_bundle,
    fit_bhattacharya,
    hilbert_table,
)
from .ideals import NormalFiltration
from .jointred import (
    INGESTED_REASON,
    JointReductionCertificate,
    PairSearch,
    Window,
    search_good_pair,
)

DEFAULT_GRID = 10
DEFAULT_KCAP = 12
DEFAULT_CERT_WINDOW = 4


@dataclass(frozen=True)
class Options:
    rmax: int = DEFAULT_GRID
    smax: int = DEFAULT_GRID
    fit_base: int = DEFAULT_BASE
    fit_window: int = DEFAULT_WINDOW
    cert_window: int = DEFAULT_CERT_WINDOW
    slack: int = 2
    kcap: int = DEFAULT_KCAP

    def as_dict(self) -> dict:
        return {
            "grid": [self.rmax, self.smax],
            "fit": {"base": self.fit_base, "window": self.fit_window},
            "window": self.cert_window,
            "negative_slack": self.slack,
            "kcap": self.kcap,
        }


class Analysis:
    def __init__(
        self,
        filtration: Optional[NormalFiltration] = None,
        table: Optional[HilbertTable] = None,
        options: Options = Options(),
        label: str = "",
    ):
        if (filtration is None) == (table is None):
            raise InputError("give exactly one of a filtration or an ingested table")
        self.filtration = filtration
        self._table = table
        self.options = options
        self.label = label

    @property
    def ingested(self) -> bool:
        return self.filtration is None

    @property
    def source(self) -> str:
        return "ingested" if self.ingested else "computed"

    @cached_property
    def table(self) -> HilbertTable:
        if self._table is not None:
            return self._table
        return hilbert_table(self.filtration, self.options.rmax, self.options.smax)

    @cached_property
    def poly(self) -> BhattacharyaPoly:
        return fit_bhattacharya(self.table, self.options.fit_base, self.options.fit_window)

    @cached_property
    def bundle(self) -> CoeffBundle:
        return coefficient_bundle(self.table, self.poly, base=self.options.fit_base, window=self.options.fit_window)

    @cached_property
    def window(self) -> Window:
        n = self.poly.base
        w = self.options.cert_window
        return Window(n + w, n + w, self.options.slack, n)

    @cached_property
    def pair_search(self) -> PairSearch:
        if self.ingested:
            return PairSearch(None, INGESTED_REASON)
        return search_good_pair(self.filtration, self.window)

    @property
    def certificate(self) -> Optional[JointReductionCertificate]:
        return self.pair_search.certificate

    def H(self, r: int, s: int) -> int:
        """Hilbert function, read from the table when inside it."""
        if 0 <= r <= self.table.rmax and 0 <= s <= self.table.smax:
            return self.table[(r, s)]
        if self.ingested:
            return self.table[(r, s)]
        return self.filtration.colength(r, s)
