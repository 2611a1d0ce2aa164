"""Genus spectrum of the subcover families at a fixed n."""

from __future__ import annotations

from dataclasses import dataclass, field

from .curves import CurveParams, Family, emit_system, family_tuples, kummer_power_factor
from .genus import closed_form_genus
from .places import ReducibleTowerError, genus_via_hurwitz

FULL = 'full'
ALL_DIVISORS = 'all-divisors'
DEFAULT_FAMILIES = (Family.C1, Family.C2, Family.C3, Family.XK)


@dataclass
class SpectrumReport:
    n: int
    e_policy: str
    families: list[str]
    records: list[tuple[dict, int]] = field(default_factory=list)
    excluded: list[dict] = field(default_factory=list)   # reducible equations, no curve

    @property
    def genera(self) -> list[int]:
        return sorted({g for _, g in self.records})

    def realizers(self, genus: int) -> list[dict]:
        return [p for p, g in self.records if g == genus]

    def to_dict(self) -> dict:
        by_genus = {}
        for params, g in self.records:
            by_genus.setdefault(g, []).append(params)
        return {'n': self.n, 'e_policy': self.e_policy, 'families': self.families,
                'genera': self.genera,
                'realizers': {str(g): by_genus[g] for g in sorted(by_genus)},
                'excluded_reducible': self.excluded}

    @classmethod
    def from_dict(cls, data: dict) -> SpectrumReport:
        records = [(p, int(g)) for g, ps in data['realizers'].items() for p in ps]
        records.sort(key=lambda r: (r[1], sorted(r[0].items())))
        return cls(data['n'], data['e_policy'], list(data['families']), records,
                   list(data.get('excluded_reducible', [])))


def _genus(params: CurveParams, e_policy: str) -> int | None:
    if e_policy == FULL:
        if kummer_power_factor(params) > 1:
            return None
        return closed_form_genus(params)
    try:
        return genus_via_hurwitz(emit_system(params))
    except ReducibleTowerError:
        return None


def enumerate_genera(n: int, families=DEFAULT_FAMILIES, e_policy: str = FULL) -> SpectrumReport:
    """Genus of every validated tuple; tuples with reducible equations are set aside."""
    if e_policy not in (FULL, ALL_DIVISORS):
        raise ValueError(f'unknown e policy {e_policy!r}')
    families = [Family(f) for f in families]
    report = SpectrumReport(n, e_policy, [f.value for f in families])
    for fam in families:
        for params in family_tuples(n, fam, full_e_only=(e_policy == FULL)):
            g = _genus(params, e_policy)
            if g is None:
                report.excluded.append(params.as_dict())
            else:
                report.records.append((params.as_dict(), g))
    report.records.sort(key=lambda r: (r[1], sorted(r[0].items())))
    return report
