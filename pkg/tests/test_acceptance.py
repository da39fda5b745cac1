"""Acceptance gate: twelve exact criteria, each with a hard runtime
budget.  All arithmetic is finite lattice algebra, so every check is
an equality or an inequality — there are no tolerances.

Criteria 1-11 run the corresponding law suite from
:mod:`qcls.suites`; criterion 12 exercises the QDF/CLI contract on the
fixture corpus.  Each test prints one PASS line naming the criterion.
"""

import json
import pathlib
import time

import pytest

from qcls.cli import main
from qcls.suites import run_suite

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


def _run(criterion, suite, budget):
    start = time.perf_counter()
    reports = run_suite(suite)
    elapsed = time.perf_counter() - start
    failures = [r for r in reports if not r.ok]
    assert not failures, "\n".join(r.text() for r in failures)
    assert reports, f"suite {suite} produced no reports"
    assert elapsed < budget, (f"criterion {criterion}: {elapsed:.1f}s "
                              f"exceeds the {budget}s budget")
    print(f"PASS criterion {criterion}: {suite} "
          f"({len(reports)} reports, {elapsed:.2f}s)")
    return reports


def test_criterion_01_quantaloid_laws():
    """Composition laws, residuation adjointness and divisibility
    verdicts on the builtin quantales and their back-diagonal images,
    including the non-divisibility witness for drastic(4)."""
    reports = _run(1, "quantaloid", 10)
    drastic = [r for r in reports if "drastic4" in r.instance]
    assert drastic, "drastic(4) divisibility must be exercised"


def test_criterion_02_dq_closed_forms():
    """Brute-force residuation equals the closed-form implication
    formulas on every arrow triple of the back-diagonal quantaloids of
    the three-element Lukasiewicz and four-element Goedel chains."""
    _run(2, "dq", 5)


def test_criterion_03_kan_adjunctions():
    """Unit/counit inequalities of both Kan adjoint pairs: exhaustive
    over the two-element quantale on small carriers, and at least 100
    seeded instances over the back-diagonal three-element chain."""
    _run(3, "kan", 30)


def test_criterion_04_yoneda():
    """Full faithfulness of the Yoneda embeddings and the pointwise
    Yoneda identity on every presheaf, for all categories on up to
    three-element carriers over the two-element quantale."""
    _run(4, "yoneda", 10)


def test_criterion_05_presheaf_completeness():
    """Suprema in presheaf categories computed through the graph of
    the Yoneda embedding agree with the defining hom equation, and the
    direct completeness check agrees with the
    tensored + cotensored + order-complete criterion everywhere."""
    _run(5, "completeness", 30)


def test_criterion_06_continuity_equivalences():
    """The four continuity characterizations for functors, and the
    four for distributors, agree on all maps between all closure
    spaces on up to two discrete points over the two-element
    quantale."""
    _run(6, "continuity", 60)


def test_criterion_07_specialization():
    """Specialization equals the classical x-in-closure-of-y preorder
    over the two-element quantale; rebuilding a category from its
    induced closure space is the identity, over the two-element
    quantale and the back-diagonal three-element chain; the two
    Alexandrov criteria agree."""
    _run(7, "specialization", 60)


def test_criterion_08_nucleus():
    """Extensivity, idempotence, monotonicity and lax compositionality
    of column-wise closure on all composable pairs of continuous
    relations among the small spaces."""
    _run(8, "nucleus", 60)


def test_criterion_09_equivalence():
    """For every ordered pair of small closure spaces: closed
    continuous relations biject with sup-preserving maps between the
    closed-set categories in the opposite direction, with realization
    a two-sided inverse; quotient-isomorphism witnesses compose to
    quotient identities on a non-discrete instance."""
    _run(9, "equivalence", 120)


def test_criterion_10_lattice_duality():
    """For every complete lattice with up to four elements (all
    isomorphism classes), taking suprema of closed presheaves is a
    bijective fully faithful functor back onto the lattice."""
    reports = _run(10, "lattices", 10)
    assert len(reports) == 5  # isomorphism classes of lattices, sizes 1-4


def test_criterion_11_fuzzy_layer():
    """The closed-form fuzzy powerset bound and hom formula equal the
    generic presheaf constructions, fuzzy closure-space laws equal the
    generic validation, and fuzzy specialization equals its closed
    formula, over the Lukasiewicz and Goedel three-element chains."""
    _run(11, "fuzzy", 60)


def test_criterion_12_cli_contract(capsys):
    """QDF round-trip stability, byte-identical reports under a fixed
    seed, and the exit-code contract on a corpus with at least one
    instance of each error class."""
    start = time.perf_counter()
    good = str(FIXTURES / "good.qdf")

    # exit-code contract: 0 pass, 1 law violation, 2 parse/resolution,
    # 3 cap exceeded
    assert main(["-f", good, "validate"]) == 0
    assert main(["-f", str(FIXTURES / "law_violation.qdf"), "validate"]) == 1
    assert main(["-f", str(FIXTURES / "parse_error.qdf"), "validate"]) == 2
    assert main(["-f", str(FIXTURES / "unresolved.qdf"), "validate"]) == 2
    assert main(["-f", good, "--cap", "2", "validate"]) == 3
    capsys.readouterr()

    # round-trip stability of the canonical serialization
    from qcls.qdf import parse_qdf, serialize
    doc = parse_qdf(pathlib.Path(good).read_text())
    assert parse_qdf(serialize(doc)) == doc
    assert serialize(parse_qdf(serialize(doc))) == serialize(doc)

    # deterministic reports under a fixed seed
    assert main(["--format", "json", "laws", "kan", "--seed", "3"]) == 0
    first = capsys.readouterr().out
    assert main(["--format", "json", "laws", "kan", "--seed", "3"]) == 0
    second = capsys.readouterr().out
    assert first == second and first
    assert all(json.loads(line)["ok"] for line in first.strip().splitlines())

    elapsed = time.perf_counter() - start
    assert elapsed < 5, f"criterion 12: {elapsed:.1f}s exceeds the 5s budget"
    print(f"PASS criterion 12: cli contract ({elapsed:.2f}s)")
