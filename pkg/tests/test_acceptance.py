"""Acceptance suite: one test per criterion, one printed line per check.

The empirical criteria run at their documented sizes (x = 10**6 for the
power scenarios, x = 10**5 for the elliptic ones) and tolerances (2%
relative, 5% relative/absolute for elliptic, 1% absolute for the
distribution atoms), so this module takes a few minutes end to end.
"""

from orbitmoments.verify import (
    suite_distribution,
    suite_formula_identities,
    suite_gl2_fixed_points,
    suite_number_field_orbits,
    suite_oracle_equivalence,
    suite_orbit_vs_closed_form,
    suite_power_moments,
    suite_psi_partition,
    suite_torsion_cm,
    suite_torsion_gl2,
)


def _run(results):
    failed = []
    for r in results:
        print(f"{'PASS' if r.ok else 'FAIL'}  {r.name}" + (f"  [{r.detail}]" if r.detail and not r.ok else ""))
        if not r.ok:
            failed.append(r)
    assert not failed, "; ".join(f"{r.name}: {r.detail}" for r in failed)


def test_criterion_1_orbit_identities():
    _run(suite_orbit_vs_closed_form())


def test_criterion_2_number_field_orbits():
    _run(suite_number_field_orbits())


def test_criterion_3_gl2_fixed_point_counts():
    _run(suite_gl2_fixed_points())


def test_criterion_4_psi_partition():
    _run(suite_psi_partition())


def test_criterion_5_formula_cross_identities():
    _run(suite_formula_identities())


def test_criterion_6_power_moment_convergence():
    _run(suite_power_moments())


def test_criterion_7_torsion_full_image():
    _run(suite_torsion_gl2())


def test_criterion_8_torsion_cm():
    _run(suite_torsion_cm())


def test_criterion_9_distribution():
    _run(suite_distribution())


def test_criterion_10_oracle_equivalence():
    _run(suite_oracle_equivalence())
