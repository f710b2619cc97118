"""Shared fixtures: small standard rings and one cached family instance."""

from __future__ import annotations

import pytest

from cmreg.ring import PolyRing, field_of_characteristic


@pytest.fixture(scope="session")
def ring3():
    return PolyRing(("x", "y", "z"), field_of_characteristic(32003))


@pytest.fixture(scope="session")
def ring3q():
    return PolyRing(("x", "y", "z"), field_of_characteristic(0))


@pytest.fixture(scope="session")
def fam22():
    from cmreg.families import build_family
    return build_family(2, 2)


@pytest.fixture(scope="session")
def fam12p():
    from cmreg.families import build_family
    return build_family(1, 2, primed=True)
