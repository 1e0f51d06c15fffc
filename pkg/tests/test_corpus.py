from dismantlable.algorithms import validate_crown
from dismantlable.cli import main
from dismantlable.corpus import (Bounds, abelian_invariant_lists, analysis_for, corpus_specs, dihedral_proof_crown,
                                 verify_paper)


def test_invariant_lists_count_abelian_groups():
    # number of abelian groups of order n, summed: 1, 1, 1, 2, 1, 1, 1, 3 for n = 1..8
    lists = abelian_invariant_lists(8)
    assert len(lists) == 11
    for inv in lists:
        assert all(a % b == 0 for a, b in zip(inv, inv[1:]))


def test_corpus_has_no_duplicates():
    specs = corpus_specs(Bounds())
    assert len(specs) == len(set(specs))


def test_proof_crown_in_d40():
    a = analysis_for("D:40")
    assert validate_crown(a.lattice, dihedral_proof_crown(a.group, a.lattice, 20))


def test_full_verification_passes(corpus):
    rows = verify_paper(Bounds())
    assert len(rows) == 15
    for r in rows:
        assert r.passed, r.line()
        assert r.line().startswith("[PASS]")


def test_verify_paper_cli_small_bounds(capsys):
    code = main(["verify-paper", "--dihedral-max", "12", "--abelian-max", "16", "--two-group-max", "16",
                 "--random-lattices", "50"])
    out = capsys.readouterr().out
    assert code == 0, out
    assert out.strip().endswith("15/15 checks passed")
