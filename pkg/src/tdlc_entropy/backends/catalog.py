"""The built-in scenario catalog.

Scenarios are plain dicts in the CLI's JSON schema, so the same data drives
the verification suites, the CLI and the shipped example files.
"""

from __future__ import annotations

CATALOG = [
    {
        "schema": 1,
        "name": "finite_trivial",
        "backend": "finite",
        "group": "trivial",
        "endo": "identity",
        "checks": [{"type": "entropy"}, {"type": "scale"}, {"type": "nub"}],
    },
    {
        "schema": 1,
        "name": "finite_s3",
        "backend": "finite",
        "group": "S3",
        "endo": "identity",
        "subgroups": {
            "A3": {"generated": [3]},
            "T": {"generated": [1]},
        },
        "checks": [
            {"type": "entropy"},
            {"type": "scale"},
            {"type": "nub"},
            {"type": "scale_link"},
            {"type": "addition", "subgroup": "A3"},
            {"type": "addition", "subgroup": "T"},
            {"type": "cotrajectory"},
        ],
    },
    {
        "schema": 1,
        "name": "finite_z12_times5",
        "backend": "finite",
        "group": "Z12",
        "endo": [0, 5, 10, 3, 8, 1, 6, 11, 4, 9, 2, 7],
        "subgroups": {"H3": {"generated": [3]}},
        "checks": [
            {"type": "entropy"},
            {"type": "scale"},
            {"type": "nub"},
            {"type": "scale_link"},
            {"type": "addition", "subgroup": "H3"},
            {"type": "cotrajectory"},
        ],
    },
    {
        "schema": 1,
        "name": "finite_z12_double",
        "backend": "finite",
        "group": "Z12",
        "endo": [0, 2, 4, 6, 8, 10, 0, 2, 4, 6, 8, 10],
        "checks": [{"type": "entropy"}, {"type": "scale"}, {"type": "cotrajectory"}],
    },
    {
        "schema": 1,
        "name": "finite_d4",
        "backend": "finite",
        "group": "D4",
        "endo": "identity",
        "checks": [{"type": "entropy"}, {"type": "scale"}, {"type": "nub"}, {"type": "scale_link"}],
    },
    {
        "schema": 1,
        "name": "q2_half",
        "backend": "padic",
        "prime": 2,
        "dim": 1,
        "matrix": [["1/2"]],
        "subgroups": {"Z2": {"full_lattice": True}, "H0": {"zero": True}, "HG": {"whole": True}},
        "checks": [
            {"type": "entropy"},
            {"type": "scale"},
            {"type": "nub"},
            {"type": "scale_link"},
            {"type": "tidy", "subgroup": "Z2"},
            {"type": "phi_n", "candidates": ["Z2"]},
            {"type": "addition", "subgroup": "H0"},
            {"type": "addition", "subgroup": "HG"},
            {"type": "cotrajectory"},
        ],
    },
    {
        "schema": 1,
        "name": "q2_double",
        "backend": "padic",
        "prime": 2,
        "dim": 1,
        "matrix": [["2"]],
        "checks": [
            {"type": "entropy"},
            {"type": "scale"},
            {"type": "nub"},
            {"type": "scale_link"},
            {"type": "cotrajectory"},
        ],
    },
    {
        "schema": 1,
        "name": "padic_diag_half_half",
        "backend": "padic",
        "prime": 2,
        "dim": 2,
        "matrix": [["1/2", "0"], ["0", "1/2"]],
        "subgroups": {"Haxis": {"subspace": [["1", "0"]]}},
        "checks": [
            {"type": "entropy"},
            {"type": "scale"},
            {"type": "nub"},
            {"type": "scale_link"},
            {"type": "addition", "subgroup": "Haxis"},
            {"type": "cotrajectory"},
        ],
    },
    {
        "schema": 1,
        "name": "padic_jordan_half",
        "backend": "padic",
        "prime": 2,
        "dim": 2,
        "matrix": [["1/2", "1"], ["0", "1/2"]],
        "subgroups": {"Haxis": {"subspace": [["1", "0"]]}},
        "checks": [
            {"type": "entropy"},
            {"type": "scale"},
            {"type": "nub"},
            {"type": "scale_link"},
            {"type": "addition", "subgroup": "Haxis"},
            {"type": "cotrajectory"},
        ],
    },
    {
        "schema": 1,
        "name": "padic_mixed_2_half",
        "backend": "padic",
        "prime": 2,
        "dim": 2,
        "matrix": [["2", "0"], ["0", "1/2"]],
        "subgroups": {"lattice": {"full_lattice": True}},
        "checks": [
            {"type": "entropy"},
            {"type": "scale"},
            {"type": "nub"},
            {"type": "scale_link"},
            {"type": "tidy", "subgroup": "lattice"},
            {"type": "cotrajectory"},
        ],
    },
    {
        "schema": 1,
        "name": "padic_singular",
        "backend": "padic",
        "prime": 2,
        "dim": 2,
        "matrix": [["1/2", "0"], ["0", "0"]],
        "subgroups": {"HG": {"whole": True}},
        "checks": [
            {"type": "entropy"},
            {"type": "scale"},
            {"type": "addition", "subgroup": "HG"},
            {"type": "cotrajectory"},
        ],
    },
    {
        "schema": 1,
        "name": "padic_q3_third",
        "backend": "padic",
        "prime": 3,
        "dim": 1,
        "matrix": [["1/3"]],
        "checks": [{"type": "entropy"}, {"type": "scale"}, {"type": "nub"}, {"type": "scale_link"}],
    },
    {
        "schema": 1,
        "name": "shift_z2_compact",
        "backend": "shift",
        "alphabet": [2],
        "tail_mode": "compact",
        "shift": 1,
        "subgroups": {
            "HG": {"constant": "full"},
            "H1": {"constant": "trivial"},
            "M_step": {"step": 1},
        },
        "checks": [
            {"type": "entropy"},
            {"type": "scale"},
            {"type": "nub"},
            {"type": "scale_link"},
            {"type": "phi_n", "candidates": ["M_step"]},
            {"type": "addition", "subgroup": "HG"},
            {"type": "addition", "subgroup": "H1"},
            {"type": "cotrajectory"},
        ],
    },
    {
        "schema": 1,
        "name": "shift_z4_compact",
        "backend": "shift",
        "alphabet": [4],
        "tail_mode": "compact",
        "shift": 1,
        "subgroups": {"H2": {"constant_gens": [[2]]}},
        "checks": [
            {"type": "entropy"},
            {"type": "scale"},
            {"type": "nub"},
            {"type": "scale_link"},
            {"type": "addition", "subgroup": "H2"},
            {"type": "cotrajectory"},
        ],
    },
    {
        "schema": 1,
        "name": "shift_z2xz2_sigma_swap",
        "backend": "shift",
        "alphabet": [2, 2],
        "tail_mode": "compact",
        "shift": 1,
        "sigma": [[0, 1], [1, 0]],
        "checks": [{"type": "entropy"}, {"type": "scale"}, {"type": "cotrajectory"}],
    },
    {
        "schema": 1,
        "name": "laurent_z2",
        "backend": "shift",
        "alphabet": [2],
        "tail_mode": "laurent",
        "shift": 1,
        "checks": [
            {"type": "entropy"},
            {"type": "scale"},
            {"type": "nub"},
            {"type": "scale_link"},
            {"type": "cotrajectory"},
        ],
    },
    {
        "schema": 1,
        "name": "laurent_z3",
        "backend": "shift",
        "alphabet": [3],
        "tail_mode": "laurent",
        "shift": 1,
        "checks": [
            {"type": "entropy"},
            {"type": "scale"},
            {"type": "nub"},
            {"type": "scale_link"},
            {"type": "cotrajectory"},
        ],
    },
    {
        "schema": 1,
        "name": "shift_discrete_z2",
        "backend": "shift",
        "alphabet": [2],
        "tail_mode": "discrete",
        "shift": 1,
        "checks": [{"type": "entropy"}, {"type": "scale"}, {"type": "nub"}, {"type": "cotrajectory"}],
    },
    {
        "schema": 1,
        "name": "product_q2half_laurent3",
        "backend": "product",
        "factors": [
            {"backend": "padic", "prime": 2, "dim": 1, "matrix": [["1/2"]]},
            {"backend": "shift", "alphabet": [3], "tail_mode": "laurent", "shift": 1},
        ],
        "checks": [{"type": "entropy"}, {"type": "scale"}, {"type": "cotrajectory"}],
    },
    {
        "schema": 1,
        "name": "product_q2half_squared",
        "backend": "product",
        "factors": [
            {"backend": "padic", "prime": 2, "dim": 1, "matrix": [["1/2"]]},
            {"backend": "padic", "prime": 2, "dim": 1, "matrix": [["1/2"]]},
        ],
        "checks": [{"type": "entropy"}, {"type": "scale"}, {"type": "cotrajectory"}],
    },
]


def catalog_scenarios():
    return [dict(s) for s in CATALOG]


def find_scenario(name: str) -> dict:
    for s in CATALOG:
        if s["name"] == name:
            return dict(s)
    raise KeyError(name)
