"""
Tests for the text format, DOT export and command line
"""
import io
import json

import pytest

from trifst.cli import EXIT_DATA_ERROR, EXIT_OK, EXIT_USAGE, format_value, main
from trifst.core.algorithms import equivalent_by_evaluation
from trifst.core.exceptions import FormatError
from trifst.core.semiring import TROPICAL, get_semiring
from trifst.core.transducer import linear_acceptor, random_acyclic
from trifst.skills.filters.filters import filter_m
from trifst.utils.dot import filter_to_dot, to_dot, transducer_to_dot
from trifst.utils.helpers import labels_to_string, string_to_labels
from trifst.utils.text_format import format_text, parse_text, read_symbols, read_text, write_symbols, write_text


def _write_acceptor(path, text, semiring=TROPICAL):
    if isinstance(semiring, str):
        semiring = get_semiring(semiring)
    path.write_text(format_text(linear_acceptor(string_to_labels(text), semiring)), encoding="utf-8")
    return str(path)


class TestTextFormat:
    """Test parse_text / format_text"""

    def test_parse(self):
        """Test parsing transitions and final states"""
        T = parse_text("0\t1\t1\t2\t0.5\n1\t2\t0\t3\n2\n", "probability")
        assert T.num_states == 3
        assert T.initials == {0: 1.0}
        assert T.finals == {2: 1.0}
        assert T.states[0][0].weight == 0.5
        assert T.states[1][0].weight == 1.0

    def test_spaces_comments_and_blank_lines(self):
        """Test spaces, comments and blank lines are accepted"""
        T = parse_text("# a machine\n\n0 1 1 1 2.0\n1 0.5\n", "tropical")
        assert T.num_transitions == 1
        assert T.finals == {1: 0.5}

    def test_initial_directive(self):
        """Test the @initial directive"""
        T = parse_text("@initial\t3\t0.5\n3\t4\t1\t1\n4\n")
        assert T.initials == {3: 0.5}
        assert T.num_states == 5

    def test_implicit_initial_is_first_source(self):
        """Test the first transition's source is the default initial state"""
        T = parse_text("2\t3\t1\t1\n0\t2\t1\t1\n3\n")
        assert T.initials == {2: 1.0}

    def test_reformat_preserves_machine(self):
        """Test formatting then parsing gives the same machine"""
        for seed in range(5):
            T = random_acyclic(6, 3, seed=seed)
            again = parse_text(format_text(T))
            assert (again.num_states, again.num_transitions) == (T.num_states, T.num_transitions)
            assert equivalent_by_evaluation(T, again, max_len=3)

    def test_explicit_initial_written_when_needed(self):
        """Test @initial is written when the default would be wrong"""
        T = parse_text("@initial\t1\n0\t1\t1\t1\n1\n")
        assert format_text(T).startswith("@initial\t1")

    @pytest.mark.parametrize("text, line", [
        ("0\t1\t1\n", 1),
        ("0\t1\t1\t1\n\nx\t1\t1\t1\n", 3),
        ("0\t1\t1\t1\t-0.5\n", 1),
        ("0\t1\t1\t1\t0\n", 1),
        ("0\t1\t1\t1\n@initial\t0\n", 2),
        ("0\t1\t-1\t1\n", 1),
        ("0\t1\t1\t1\tabc\n", 1),
    ])
    def test_errors_carry_line_numbers(self, text, line):
        """Test malformed lines report their line number"""
        with pytest.raises(FormatError) as excinfo:
            parse_text(text, "probability")
        assert excinfo.value.line_number == line
        assert str(excinfo.value).startswith(f"line {line}:")

    def test_tropical_zero_weight_rejected(self):
        """Test an infinite tropical weight is rejected"""
        with pytest.raises(FormatError):
            parse_text("0\t1\t1\t1\tinf\n", "tropical")

    def test_read_and_write_paths(self, tmp_path):
        """Test reading and writing files and streams"""
        T = linear_acceptor([1, 2, 3], TROPICAL)
        path = tmp_path / "abc.fst"
        write_text(T, path)
        again = read_text(path, "tropical")
        assert equivalent_by_evaluation(T, again, max_len=3)
        assert read_text(io.StringIO(path.read_text()), TROPICAL).num_transitions == 3

    def test_symbols(self, tmp_path):
        """Test symbol tables are written in label order and read back"""
        path = tmp_path / "letters.syms"
        write_symbols({"b": 2, "a": 1}, path)
        assert path.read_text().splitlines()[0] == "a\t1"
        assert read_symbols(path) == {"a": 1, "b": 2}

    def test_epsilon_label_is_reserved(self, tmp_path):
        """Test a symbol mapped to label 0 is rejected with its line"""
        path = tmp_path / "eps.syms"
        path.write_text("a\t1\n<eps>\t0\n")
        with pytest.raises(FormatError) as excinfo:
            read_symbols(path)
        assert excinfo.value.line_number == 2

    def test_duplicate_symbol(self, tmp_path):
        """Test a duplicated symbol is rejected with its line"""
        path = tmp_path / "dup.syms"
        path.write_text("a\t1\na\t2\n")
        with pytest.raises(FormatError) as excinfo:
            read_symbols(path)
        assert excinfo.value.line_number == 2


class TestDot:
    """Test Graphviz export"""

    def test_transducer(self):
        """Test DOT output for a transducer"""
        T = linear_acceptor([1], TROPICAL)
        dot = transducer_to_dot(T, "one", symbols={1: "a"})
        assert dot.startswith('digraph "one"')
        assert 'label="a:a/0.0"' in dot
        assert "doublecircle" in dot

    def test_epsilon_label(self, epsilon_chains):
        """Test ε labels in DOT output"""
        dot = to_dot(epsilon_chains[0])
        assert "1:ε" in dot

    def test_filter(self):
        """Test DOT output for a filter"""
        dot = filter_to_dot(filter_m())
        assert dot.count("->") == 1 + filter_m().num_transitions
        assert to_dot(filter_m()) == dot


class TestHelpers:
    """Test letter <-> label mapping"""

    def test_letters(self):
        """Test letter labels"""
        assert string_to_labels("abz") == [1, 2, 26]
        assert labels_to_string([1, 0, 2]) == "ab"
        with pytest.raises(ValueError):
            string_to_labels("A")

    def test_format_value(self):
        """Test value formatting"""
        assert format_value(1.0) == "1"
        assert format_value(0.25) == "0.25"
        assert format_value(float("inf")) == "inf"


class TestCli:
    """Test the trifst command"""

    def test_editdist(self, tmp_path, capsys):
        """Test editdist prints the distance"""
        ab = _write_acceptor(tmp_path / "ab.fst", "ab")
        ba = _write_acceptor(tmp_path / "ba.fst", "ba")
        assert main(["editdist", ab, ba, "--transpose", "1"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "1"
        assert main(["editdist", ab, ba]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "2"

    def test_kernel(self, tmp_path, capsys):
        """Test kernel prints the kernel value"""
        abab = _write_acceptor(tmp_path / "abab.fst", "abab", "probability")
        ab = _write_acceptor(tmp_path / "ab.fst", "ab", "probability")
        assert main(["kernel", abab, ab, "--order", "2"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "6"

    def test_compose3_writes_machine(self, tmp_path, capsys):
        """Test compose3 writes the machine to stdout"""
        ab = _write_acceptor(tmp_path / "ab.fst", "ab", "probability")
        assert main(["compose3", ab, ab, ab, "--strategy", "central", "--filter", "pair"]) == EXIT_OK
        R = parse_text(capsys.readouterr().out)
        assert equivalent_by_evaluation(R, linear_acceptor([1, 2]), max_len=2)

    def test_compose3_lazy_to_file(self, tmp_path):
        """Test lazy compose3 writes to a file"""
        ab = _write_acceptor(tmp_path / "ab.fst", "ab", "probability")
        out = tmp_path / "r.fst"
        assert main(["compose3", ab, ab, ab, "--lazy", "-o", str(out)]) == EXIT_OK
        assert read_text(out).num_transitions == 2

    def test_compose(self, tmp_path, capsys):
        """Test compose writes the machine to stdout"""
        ab = _write_acceptor(tmp_path / "ab.fst", "ab", "probability")
        assert main(["compose", ab, ab]) == EXIT_OK
        assert parse_text(capsys.readouterr().out).num_states == 3

    def test_info(self, tmp_path, capsys):
        """Test info prints machine statistics"""
        ab = _write_acceptor(tmp_path / "ab.fst", "ab")
        assert main(["info", ab, "--semiring", "tropical"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "states\t3" in out and "acyclic\ttrue" in out and "acceptor\ttrue" in out

    def test_info_dot(self, tmp_path, capsys):
        """Test info renders DOT with symbols"""
        ab = _write_acceptor(tmp_path / "ab.fst", "ab")
        syms = tmp_path / "ab.syms"
        write_symbols({"a": 1, "b": 2}, syms)
        assert main(["info", ab, "--dot", "--semiring", "tropical", "--symbols", str(syms)]) == EXIT_OK
        assert "a:a" in capsys.readouterr().out

    def test_info_filter(self, capsys):
        """Test info on built-in filters"""
        assert main(["info", "--filter", "M"]) == EXIT_OK
        assert "filter M: 3 states" in capsys.readouterr().out
        assert main(["info", "--filter", "W", "--dot"]) == EXIT_OK
        assert capsys.readouterr().out.startswith('digraph "W"')

    def test_bench_json(self, tmp_path, capsys):
        """Test bench writes a JSON report"""
        out = tmp_path / "report.json"
        code = main(["bench", "--scenario", "kernel", "--size", "8", "--repetitions", "1",
                     "--json", "--out", str(out)])
        assert code == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["scenario"] == "kernel" and report["size"] == 8
        assert [entry["method"] for entry in report["entries"]] == [
            "cascade", "3way-lateral", "3way-central", "3way-combined"]
        assert report["results_agree"] is True
        assert json.loads(out.read_text()) == report

    def test_missing_file(self, tmp_path, capsys):
        """Test a missing file exits with a data error"""
        assert main(["info", str(tmp_path / "absent.fst")]) == EXIT_DATA_ERROR
        assert "trifst:" in capsys.readouterr().err

    def test_malformed_file(self, tmp_path, capsys):
        """Test a malformed file exits with a data error"""
        bad = tmp_path / "bad.fst"
        bad.write_text("0\t1\t1\n")
        assert main(["info", str(bad)]) == EXIT_DATA_ERROR
        assert "line 1" in capsys.readouterr().err

    def test_negative_cost(self, tmp_path):
        """Test a negative cost exits with a data error"""
        ab = _write_acceptor(tmp_path / "ab.fst", "ab")
        assert main(["editdist", ab, ab, "--sub", "-1"]) == EXIT_DATA_ERROR

    @pytest.mark.parametrize("argv", [
        [],
        ["compose3", "a.fst"],
        ["compose3", "a", "b", "c", "--strategy", "diagonal"],
        ["info"],
        ["info", "a.fst", "--filter", "M"],
    ])
    def test_usage_errors(self, argv):
        """Test bad arguments exit with a usage error"""
        assert main(argv) == EXIT_USAGE

    def test_version(self, capsys):
        """Test --version"""
        assert main(["--version"]) == EXIT_OK
        assert "trifst 1.0.0" in capsys.readouterr().out
