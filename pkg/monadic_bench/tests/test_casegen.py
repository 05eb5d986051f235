import os
import tempfile
import unittest
from unittest import TestCase

from monadic_bench.core.elements import AsymRule
from monadic_bench.core.notation import parse_category
from monadic_bench.core.grammar_io import (load_grammar, source_grammar,
                                           parse_grammar_text)
from monadic_bench.core.chart_parser import analyze, ARULE
from monadic_bench.core.casegen import (generate_case_functions,
                                        merge_case_functions, write_arules,
                                        rule_signature, CASE_LF)
from monadic_bench.core.errors import EmptyPosList

DATA = os.path.join(os.path.dirname(__file__), "..", "examples", "data")


def sample(name):
    grammar, errors = load_grammar(os.path.join(DATA, name))
    assert not errors, errors
    return source_grammar(grammar)


class TestCasegen(TestCase):
    """Test case function generation from verb categories
    """

    def setUp(self):
        self.raising = sample("raising.txt")

    def test_generate(self):
        rules = generate_case_functions(self.raising, ["v"])
        self.assertEqual(["case-v-1", "case-v-2"],
                         [rule.name for rule in rules])
        obj, subj = rules
        self.assertEqual("np", str(obj.lhs_cat))
        self.assertEqual("(s\\^np[agr=3s])\\((s\\^np[agr=3s])/^np)",
                         str(obj.rhs_cat))
        self.assertEqual("np[agr=3s]", str(subj.lhs_cat))
        self.assertEqual("s/(s\\^np[agr=3s])", str(subj.rhs_cat))
        for rule in rules:
            self.assertIsInstance(rule, AsymRule)
            self.assertIsNone(rule.key)
            self.assertEqual(CASE_LF, rule.rhs_lf)

    def test_generalize(self):
        rules = generate_case_functions(self.raising, ["V"], generalize=True)
        subj = rules[1]
        self.assertEqual("np[agr=?x]", str(subj.lhs_cat))
        self.assertEqual("s/(s\\^np[agr=?x])", str(subj.rhs_cat))
        # the outer slot has no constant features to replace
        self.assertEqual("np", str(rules[0].lhs_cat))

    def test_empty_pos_list(self):
        with self.assertRaises(EmptyPosList):
            generate_case_functions(self.raising, [])

    def test_unknown_pos(self):
        self.assertEqual([], generate_case_functions(self.raising, ["adv"]))

    def test_no_duplicates(self):
        grammar, _ = parse_grammar_text(
            "sees | v :: (s\\np)/np : \\x\\y.see x y\n"
            "hears | v :: (s\\np)/np : \\x\\y.hear x y\n", "dup")
        rules = generate_case_functions(source_grammar(grammar), ["v"])
        self.assertEqual(2, len(rules))

    def test_rule_signature(self):
        a = rule_signature(parse_category("np[agr=?a]"),
                           parse_category("s/(s\\np[agr=?a])"))
        b = rule_signature(parse_category("np[agr=?b]"),
                           parse_category("s/(s\\np[agr=?b])"))
        c = rule_signature(parse_category("np[agr=?a]"),
                           parse_category("s/(s\\np[agr=?b])"))
        self.assertEqual(a, b)
        self.assertNotEqual(a, c)

    def test_merge(self):
        grammar = sample("likes.txt")
        self.assertFalse(any(
            step.kind == ARULE
            for d in analyze("Sincerity likes John", grammar)
            for step in d.steps()))
        rules = generate_case_functions(grammar, ["v"])
        self.assertEqual(4, len(rules))
        merged = merge_case_functions(grammar, rules)
        self.assertEqual([5, 6, 7, 8],
                         [rule.key for rule in merged.get_arules()])
        self.assertEqual(len(grammar) + 4, len(merged))
        # the source grammar is left alone
        self.assertEqual([], grammar.get_arules())
        derivations = analyze("Sincerity likes John", merged)
        self.assertTrue(any(step.kind == ARULE
                            for d in derivations for step in d.steps()))

    def test_write_arules(self):
        rules = generate_case_functions(self.raising, ["v"])
        with tempfile.TemporaryDirectory() as directory:
            path = write_arules(rules, "raising", directory)
            self.assertEqual(
                os.path.join(directory, "raising.sc.arules"), path)
            with open(path, "r", encoding="utf-8") as arules_file:
                text = arules_file.read()
        self.assertNotIn("<", text.replace("-->", ""))
        reread, errors = parse_grammar_text(text, "raising")
        self.assertEqual([], errors)
        self.assertEqual([r.name for r in rules],
                         [r.name for r in reread.get_arules()])


if __name__ == "__main__":
    unittest.main()
