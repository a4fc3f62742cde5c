"""Guard the transcribed tables against accidental edits."""

import hashlib

import pytest

from conftest import BAER_POINTS, FIXTURES
from tripres.presentation import orbit_representative

CHECKSUMS = {
    "hughes9.plane": "143802ba20ce6feec4db416ad5604aee65a010b8e531f733f26cc25a4669a30e",
    "hughes9.lambda": "b8d8f88c14eef82a6a241ad1acf425720b0d06d9bc912628fac685cd941185d4",
    "hughes9.tri": "fd7342810cddb7ba33690c8bf434b0d1770ff2fc886f2b4bec1270c46f89ce8e",
    "hughes9_baer.tri": "82d0dc3fbefd102dff57b92d808d4707f3883bd26c1be464d5757dc5bf7394ac",
}


def data_rows(name):
    text = (FIXTURES / name).read_text()
    return [r.split() for r in text.splitlines() if r.strip() and not r.startswith("#")]


@pytest.mark.parametrize("name", sorted(CHECKSUMS))
def test_checksum(name):
    digest = hashlib.sha256((FIXTURES / name).read_bytes()).hexdigest()
    assert digest == CHECKSUMS[name]


def test_shapes():
    assert [len(r) for r in data_rows("hughes9.plane")] == [10] * 91
    assert [len(r) for r in data_rows("hughes9.lambda")] == [10] * 9 + [1]
    assert len(data_rows("hughes9.tri")) == 314
    assert len(data_rows("hughes9_baer.tri")) == 20


def test_table_orbits_are_distinct():
    orbits = [orbit_representative(tuple(map(int, r))) for r in data_rows("hughes9.tri")]
    assert len(set(orbits)) == 314
    assert sum(1 for t in orbits if len(set(t)) == 1) == 16


def test_baer_orbits_come_from_the_table():
    table = {orbit_representative(tuple(map(int, r))) for r in data_rows("hughes9.tri")}
    baer = {orbit_representative(tuple(map(int, r))) for r in data_rows("hughes9_baer.tri")}
    assert baer <= table
    inside = {t for t in table if set(t) <= set(BAER_POINTS)}
    assert baer == inside
