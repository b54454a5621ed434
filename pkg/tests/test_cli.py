import json

import pytest

from grouper.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestGroupCommand:
    def test_describe_text(self, capsys):
        code, out, _ = run(capsys, "group", "cyclic:6")
        assert code == 0
        assert "order: 6" in out

    def test_describe_json(self, capsys):
        code, out, _ = run(capsys, "--format", "json", "group", "dihedral:8")
        data = json.loads(out)
        assert code == 0 and data["order"] == 8 and data["abelian"] is False

    def test_inline_permutations(self, capsys):
        code, out, _ = run(capsys, "group", "(1 2)(3 4);(1 3)(2 4)")
        assert code == 0 and "order: 4" in out

    def test_spec_file(self, capsys, tmp_path):
        f = tmp_path / "g.spec"
        f.write_text("name: K\n(1 2)(3 4)\n(1 3)(2 4)\n")
        code, out, _ = run(capsys, "group", str(f))
        assert code == 0 and "name: K" in out

    def test_bad_spec_exit_two(self, capsys):
        code, _, err = run(capsys, "group", "frobnitz:5")
        assert code == 2
        assert err.startswith("error:spec-parse:")


class TestHomsCommand:
    def test_counts(self, capsys):
        code, out, _ = run(capsys, "homs", "cyclic:3", "symmetric:3")
        assert code == 0 and "hom-count: 3" in out

    def test_json_schema(self, capsys):
        code, out, _ = run(capsys, "--format", "json", "homs", "cyclic:2", "cyclic:4")
        data = json.loads(out)
        assert data["count"] == 2 and data["homs"] == [[0, 0], [0, 2]]


class TestClassifyCommand:
    def test_classify_all(self, capsys):
        code, out, _ = run(capsys, "classify", "cyclic:3", "symmetric:3")
        assert code == 0
        assert out.count("galois:") == 3

    def test_classify_json_flags(self, capsys):
        code, out, _ = run(capsys, "--format", "json", "classify", "cyclic:2", "cyclic:2")
        data = json.loads(out)
        reports = data["reports"]
        identity = reports[-1]
        assert all(identity["flags"].values())

    def test_hom_file_full_map(self, capsys, tmp_path):
        f = tmp_path / "hom.txt"
        f.write_text("0 2\n")
        code, out, _ = run(capsys, "classify", "cyclic:2", "cyclic:4", "--hom", str(f))
        assert code == 0 and "isEnvelope: true" in out and "isLocalization: false" in out

    def test_hom_file_generator_images(self, capsys, tmp_path):
        f = tmp_path / "hom.txt"
        f.write_text("2\n")
        code, out, _ = run(capsys, "classify", "cyclic:2", "cyclic:4", "--hom", str(f))
        assert code == 0 and "hom: 0 2" in out

    def test_non_multiplicative_hom_exit_two(self, capsys, tmp_path):
        f = tmp_path / "hom.txt"
        f.write_text("0 1\n")
        code, _, err = run(capsys, "classify", "cyclic:2", "cyclic:4", "--hom", str(f))
        assert code == 2 and err.startswith("error:")

    def test_assert_pass_and_fail(self, capsys, tmp_path):
        f = tmp_path / "hom.txt"
        f.write_text("0 2\n")
        code, _, _ = run(capsys, "classify", "cyclic:2", "cyclic:4",
                         "--hom", str(f), "--assert", "isEnvelope")
        assert code == 0
        code, _, _ = run(capsys, "classify", "cyclic:2", "cyclic:4",
                         "--hom", str(f), "--assert", "isLocalization")
        assert code == 1

    def test_relative_class(self, capsys, tmp_path):
        f = tmp_path / "hom.txt"
        f.write_text("0 2\n")
        code, out, _ = run(capsys, "--format", "json", "classify", "cyclic:2", "cyclic:4",
                           "--hom", str(f), "--class", "cyclic:4,cyclic:8")
        data = json.loads(out)
        assert code == 0 and data["flags"]["isApproximation"] is True


class TestOtherCommands:
    def test_galois(self, capsys):
        code, out, _ = run(capsys, "galois", "cyclic:3", "symmetric:3")
        assert code == 0 and "order: 3" in out and "structure: C3" in out

    def test_socle(self, capsys):
        code, out, _ = run(capsys, "socle", "symmetric:3", "--class", "cyclic:3")
        assert code == 0 and "socle-order: 3" in out

    def test_radical(self, capsys):
        code, out, _ = run(capsys, "radical", "cyclic:4", "--class", "cyclic:2")
        assert code == 0 and "radical-order: 4" in out

    def test_orthogonal(self, capsys, tmp_path):
        f = tmp_path / "hom.txt"
        f.write_text("0 1 0 1\n")
        code, out, _ = run(capsys, "orthogonal", "cyclic:4", "cyclic:2",
                           "--hom", str(f), "--class", "cyclic:2")
        assert code == 0 and "orthogonal: true" in out

    def test_simple_criterion(self, capsys):
        code, out, _ = run(capsys, "--format", "json", "simple-criterion",
                           "cyclic:3", "symmetric:3")
        data = json.loads(out)
        assert code == 0 and data["predictedGaloisOrder"] == 3 and data["agrees"] is True

    def test_search(self, capsys):
        code, out, _ = run(capsys, "--format", "json", "search", "cyclic:2", "cyclic:4",
                           "--kind", "envelope", "--injective")
        data = json.loads(out)
        assert data["homs"] == [[0, 2]]

    def test_missing_hom_file(self, capsys):
        code, _, err = run(capsys, "classify", "cyclic:2", "cyclic:4",
                           "--hom", "/nonexistent/h.txt")
        assert code == 2


class TestVerifyCommand:
    def test_text_has_violations_line(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "cogalois", "--max-order", "6")
        assert code == 0 and "violations: 0" in out

    def test_json_determinism_across_jobs(self, capsys):
        from grouper.corpus import clear_pair_cache

        code1, out1, _ = run(capsys, "--format", "json", "verify",
                             "--suite", "galois", "--max-order", "8", "--jobs", "1")
        clear_pair_cache()
        code8, out8, _ = run(capsys, "--format", "json", "verify",
                             "--suite", "galois", "--max-order", "8", "--jobs", "8")
        assert code1 == code8 == 0
        assert out1 == out8

    def test_assert_flag(self, capsys):
        code, _, _ = run(capsys, "verify", "--suite", "galois", "--max-order", "4", "--assert")
        assert code == 0


class TestCache:
    def test_cache_flag_writes_files(self, capsys, tmp_path):
        from grouper.homs import clear_caches, set_cache_dir

        clear_caches()
        try:
            code, _, _ = run(capsys, "--cache", str(tmp_path), "homs", "cyclic:5", "cyclic:5")
            assert code == 0
            assert any(p.name.startswith("homs_") for p in tmp_path.iterdir())
        finally:
            set_cache_dir(None)
            clear_caches()
