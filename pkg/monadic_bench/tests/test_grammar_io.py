import os
import tempfile
import unittest
from unittest import TestCase

from monadic_bench.core.elements import Entry, AsymRule, SymRule
from monadic_bench.core.notation import parse_term
from monadic_bench.core.evaluator import alpha_equiv
from monadic_bench.core.grammar_io import (
    strip_comment, parse_element, parse_grammar_text, load_grammar,
    source_grammar, element_line, regenerate_text, element_to_dict,
    write_src, read_src, parse_supervision, write_sup, read_sup,
    ExperimentSpec, parse_experiment_line, parse_experiment_file,
    experiment_lines, SRC_HEADER)
from monadic_bench.core.errors import (LineError, DuplicateUserKey,
                                       VersionMismatch, UnknownPreFunction)

DATA = os.path.join(os.path.dirname(__file__), "..", "examples", "data")
SAMPLES = ["raising.txt", "toy.txt", "likes.txt", "nuuchahnulth.txt",
           "control.txt", "idiom.txt", "chain.txt"]

RAISING = """\
likes | v :: (s\\^np[agr=3s])/^np : \\x\\y.like x y
#np-raise np[agr=?x] : lf --> s/(s\\np[agr=?x]) : \\lf\\p. p lf
#tense runs, s[t=pres,agr=3s]\\np:\\x.pres run x <--> \
ran, s[t=past]\\np:\\x.past run x
"""

RAISING_SOURCED = """\
likes | v :: (s\\^np[agr=3s])/^np : \\x\\y.like x y <1, 1.0>
#np-raise np[agr=?x] : lf --> s/(s\\np[agr=?x]) : \\lf\\p.p lf <2, 1.0>
runs | tense :: s[t=pres,agr=3s]\\np : \\x.pres run x <3, 1.0>
ran | tense :: s[t=past]\\np : \\x.past run x <4, 1.0>
"""


class TestGrammarIO(TestCase):
    """Test reading and writing of every textual artifact
    """

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def test_strip_comment(self):
        self.assertEqual("", strip_comment("% a comment"))
        self.assertEqual("a :: np : a ", strip_comment("a :: np : a % b"))
        self.assertEqual("100% :: n : full",
                         strip_comment("100% :: n : full"))
        self.assertEqual('x :: s/"50%" : \\p.p ',
                         strip_comment('x :: s/"50%" : \\p.p % c'))

    def test_parse_element_entry(self):
        entry = parse_element("likes | v :: (s\\^np[agr=3s])/^np : "
                              "\\x\\y.like x y")
        self.assertIsInstance(entry, Entry)
        self.assertEqual(("likes",), entry.phon)
        self.assertEqual("v", entry.pos)
        self.assertEqual("\\x\\y.like x y", str(entry.lf))
        self.assertIsNone(entry.key)

    def test_parse_element_without_pos(self):
        entry = parse_element("man :: n : man")
        self.assertIsNone(entry.pos)
        self.assertEqual("man :: n : man", element_line(entry))

    def test_parse_element_empty(self):
        self.assertIsNone(parse_element(""))
        self.assertIsNone(parse_element("   % nothing here"))

    def test_parse_element_invalid(self):
        with self.assertRaises(LineError) as le:
            parse_element("slept :: s\\np : sleep someone", 4)
        self.assertEqual(4, le.exception.line)
        with self.assertRaises(LineError):
            parse_element("#tense a, s : a <--> b, s : b <3, 1.0>")
        with self.assertRaises(LineError):
            parse_element('odd :: "x"/np : \\x.x')
        with self.assertRaises(LineError):
            parse_element("no category here")
        with self.assertRaises(LineError):
            parse_element("#raise np : lf")
        with self.assertRaises(LineError):
            parse_element("bad :: (s\\np : \\x.bad x")

    def test_parse_grammar_text(self):
        grammar, errors = parse_grammar_text(RAISING, "raising")
        self.assertEqual([], errors)
        self.assertEqual(3, len(grammar))
        self.assertIsInstance(grammar.get_elements()[1], AsymRule)
        self.assertIsInstance(grammar.get_elements()[2], SymRule)

    def test_parse_grammar_text_errors(self):
        text = ("john :: np : john\n"
                "slept :: s\\np : sleep someone\n"
                "\n"
                "bad :: (s : x\n")
        grammar, errors = parse_grammar_text(text)
        self.assertEqual(1, len(grammar))
        self.assertEqual([2, 4], [error.line for error in errors])

    def test_source_grammar(self):
        grammar, _ = parse_grammar_text(RAISING, "raising")
        sourced = source_grammar(grammar)
        self.assertEqual([1, 2, 3, 4], sourced.get_keys())
        self.assertEqual(3, len(sourced.get_entries()))
        self.assertEqual("tense", sourced.get_element(4).pos)
        self.assertEqual(0, len(source_grammar(parse_grammar_text("")[0])))

    def test_source_grammar_user_keys(self):
        grammar, _ = parse_grammar_text("john :: np : john <314, 1.0>\n"
                                        "mary :: np : mary\n")
        self.assertEqual([314, 315], source_grammar(grammar).get_keys())
        grammar, _ = parse_grammar_text("john :: np : john <5, 1.0>\n"
                                        "mary :: np : mary <5, 2.0>\n")
        with self.assertRaises(DuplicateUserKey):
            source_grammar(grammar)

    def test_regenerate_text(self):
        sourced = source_grammar(parse_grammar_text(RAISING, "raising")[0])
        self.assertEqual(RAISING_SOURCED, regenerate_text(sourced))
        again = source_grammar(parse_grammar_text(RAISING_SOURCED)[0])
        self.assertEqual(sourced, again)
        self.assertEqual(RAISING_SOURCED, regenerate_text(again))

    def test_element_line_weight(self):
        entry = parse_element("john :: np : john").with_key(7, 0.25)
        line = element_line(entry)
        self.assertTrue(line.endswith("<7, 0.25>"))
        self.assertEqual(entry, parse_element(line))

    def test_round_trip_samples(self):
        for sample in SAMPLES:
            with self.subTest(sample=sample):
                grammar, errors = load_grammar(os.path.join(DATA, sample))
                self.assertEqual([], errors)
                sourced = source_grammar(grammar)
                path = os.path.join(self.tmp.name,
                                    sample.replace(".txt", ".src"))
                write_src(sourced, path)
                read = read_src(path)
                self.assertEqual(sourced, read)
                text = regenerate_text(read)
                reparsed, errors = parse_grammar_text(text)
                self.assertEqual([], errors)
                self.assertEqual(sourced, source_grammar(reparsed))

    def test_write_src(self):
        sourced = source_grammar(parse_grammar_text(RAISING, "raising")[0])
        path = os.path.join(self.tmp.name, "raising.src")
        write_src(sourced, path)
        with open(path, "r", encoding="utf-8") as src_file:
            lines = src_file.read().splitlines()
        self.assertEqual(SRC_HEADER, lines[0])
        # header, column names and one record per element
        self.assertEqual(6, len(lines))
        self.assertEqual("raising", read_src(path).get_name())

    def test_read_src_version(self):
        path = os.path.join(self.tmp.name, "old.src")
        with open(path, "w", encoding="utf-8") as src_file:
            src_file.write("# monadic-bench src v0\nkind\tkey\n")
        with self.assertRaises(VersionMismatch):
            read_src(path)

    def test_element_to_dict(self):
        entry = parse_element("likes | v :: (s\\np)/np : \\x\\y.like x y")
        info = element_to_dict(entry)
        self.assertEqual(2, info["arity"])
        self.assertEqual("(s\\np)/np", info["category"])
        rule = element_to_dict(parse_element(
            "#np-raise np : lf --> s/(s\\np) : \\lf\\p.p lf"))
        self.assertEqual("s/(s\\np)", rule["rhs"]["category"])

    def test_parse_supervision(self):
        text = ("% control sentences\n"
                "Mary expected Harry to study : expect (study harry) mary\n"
                "Mary expected Harry to study : expect (study harry) mary\n"
                "\n"
                "x |the bucket| : f y\n"
                "no colon here\n")
        pairs, errors = parse_supervision(text)
        self.assertEqual(3, len(pairs))
        self.assertEqual(pairs[0], pairs[1])
        self.assertTrue(alpha_equiv(
            parse_term("((expect (study harry)) mary)"), pairs[0].gold_lf))
        self.assertEqual(2, len(pairs[2].surface))
        self.assertTrue(pairs[2].surface[1].is_mwe)
        self.assertEqual([6], [error.line for error in errors])

    def test_sup_round_trip(self):
        with open(os.path.join(DATA, "control_pairs.txt"), "r",
                  encoding="utf-8") as sup_file:
            pairs, errors = parse_supervision(sup_file.read())
        self.assertEqual(3, len(pairs))
        path = os.path.join(self.tmp.name, "control.sup")
        write_sup(pairs, path)
        self.assertEqual(pairs, read_sup(path))
        with self.assertRaises(VersionMismatch):
            read_sup(os.path.join(DATA, "control_pairs.txt"))

    def test_experiment_spec_invalid(self):
        with self.assertRaises(ValueError) as ve:
            ExperimentSpec(1000, 2000, 10, 0.5, 1.0, "a")
        self.assertEqual(str(ve.exception),
                         "heap_mb cannot be more than mem_mb")
        with self.assertRaises(ValueError):
            ExperimentSpec(0, 0, 0, 0.5, 1.0, "a")
        with self.assertRaises(ValueError):
            ExperimentSpec(0, 0, 10, -0.5, 1.0, "a")
        with self.assertRaises(UnknownPreFunction):
            ExperimentSpec(0, 0, 10, 0.5, 1.0, "a", "bogus-fn")

    def test_parse_experiment_line(self):
        spec = parse_experiment_line("7000 4000 xp 1.2 1.0 nfp nfparse-off")
        self.assertEqual(ExperimentSpec(7000, 4000, "xp", 1.2, 1.0, "nfp",
                                        "nfparse-off"), spec)
        self.assertTrue(spec.extrapolate)
        self.assertEqual("nfp-1.2-1.0-xp", spec.run_label())
        self.assertEqual("7000 4000 xp 1.2 1.0 nfp nfparse-off",
                         spec.to_line())
        spec = parse_experiment_line("4000 2000 10 0.5 1.0 boff")
        self.assertEqual(10, spec.iterations)
        self.assertIsNone(spec.pre_function)

    def test_parse_experiment_line_invalid(self):
        with self.assertRaises(UnknownPreFunction):
            parse_experiment_line("4000 2000 10 0.5 1.0 b bogus-fn")
        for line in ["4000 2000 10 0.5", "4000 2000 ten 0.5 1.0 b",
                     "4000 2000 10 0 1.0 b", "2000 4000 10 0.5 1.0 b"]:
            with self.subTest(line=line):
                with self.assertRaises(LineError):
                    parse_experiment_line(line, 3)

    def test_parse_experiment_file(self):
        with open(os.path.join(DATA, "experiments.txt"), "r",
                  encoding="utf-8") as experiment_file:
            text = experiment_file.read()
        specs = parse_experiment_file(text)
        self.assertEqual(["nfp", "bon", "boff"],
                         [spec.log_prefix for spec in specs])
        self.assertEqual([1, 2, 3], [n for n, _ in experiment_lines(text)])


if __name__ == "__main__":
    unittest.main()
