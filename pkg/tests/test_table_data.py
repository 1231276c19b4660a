"""The bundled knot table is exactly what the generator produces and every
row passes its anchors (crossing number, determinant, |signature|,
alternating status); the frozen braid presentations match the search."""

import tablegen
from slicebound import braid_text
from slicebound.cli import bundled_table_path

# chirality-matched presentations, derived by determinant identification and
# oracle chirality matching in tablegen.braid_presentations()
FROZEN_BRAID_WORDS = {
    "3_1": "2: [-1,-1,-1]",
    "4_1": "3: [1,-2,1,-2]",
    "5_1": "2: [-1,-1,-1,-1,-1]",
    "5_2": "3: [-1,-1,-1,-2,1,-2]",
    "6_2": "3: [1,1,1,-2,1,-2]",
    "6_3": "3: [1,1,-2,1,-2,-2]",
    "7_1": "2: [1,1,1,1,1,1,1]",
    "8_18": "3: [1,-2,1,-2,1,-2,1,-2]",
    "8_19": "3: [-1,-2,-1,-2,-1,-2,-1,-2]",
}


def test_bundled_csv_matches_generator():
    with open(bundled_table_path(), encoding="utf-8") as fh:
        bundled = fh.read()
    assert bundled == tablegen.table_csv_text()


def test_census_covers_all_primes_through_8_crossings():
    names = set(tablegen.CENSUS)
    expected = {"0_1", "3_1", "4_1", "5_1", "5_2"}
    expected.update(f"6_{i}" for i in range(1, 4))
    expected.update(f"7_{i}" for i in range(1, 8))
    expected.update(f"8_{i}" for i in range(1, 22))
    assert names == expected


def test_determinants_pairwise_anchor_the_weave_identifications():
    # 35 and 37 only occur once among knots presentable with <= 8 crossings,
    # so the weave search cannot mislabel 8_16 / 8_17
    dets = [info["det"] for name, info in tablegen.CENSUS.items() if name != "0_1"]
    assert dets.count(35) == 1 and dets.count(37) == 1


def test_frozen_braid_presentations():
    derived = tablegen.braid_presentations()
    assert {k: braid_text(w).replace(" ", "") for k, w in derived.items()} == {
        k: v.replace(" ", "") for k, v in FROZEN_BRAID_WORDS.items()
    }
