import unittest
from unittest import TestCase

from monadic_bench.core.category import (FeatureBundle, SlashSpec, Basic,
                                         Complex, Singleton, Meta, FORWARD,
                                         BACKWARD, DIAMOND, STAR, cat_equal,
                                         arity, skeleton, spine,
                                         category_variables, contains_meta,
                                         result_has_singleton,
                                         basic_categories,
                                         normalize_singleton)


class TestCategory(TestCase):
    """Test the category types and their helpers
    """

    def setUp(self):
        self.np3s = Basic("np", FeatureBundle([("agr", "3s")]))
        self.vp = Complex(Basic("s"), SlashSpec(BACKWARD, modality=DIAMOND),
                          self.np3s)
        self.likes = Complex(self.vp, SlashSpec(FORWARD, modality=DIAMOND),
                             Basic("np"))

    def test_feature_bundle_invalid(self):
        with self.assertRaises(ValueError) as ve:
            FeatureBundle([("agr", "3s"), ("agr", "1s")])
        self.assertEqual(str(ve.exception), "Feature names must be unique "
                                            "within a bundle (agr, agr)")

    def test_feature_bundle_order(self):
        a = FeatureBundle([("t", "pres"), ("agr", "3s")])
        b = FeatureBundle([("agr", "3s"), ("t", "pres")])
        self.assertEqual(a, b)
        self.assertEqual(hash(a), hash(b))
        self.assertEqual("[t=pres,agr=3s]", str(a))
        self.assertEqual("3s", a.get("agr"))
        self.assertIsNone(a.get("num"))
        self.assertEqual({"?x"}, FeatureBundle([("agr", "?x")]).variables())

    def test_slash_spec_invalid(self):
        with self.assertRaises(ValueError):
            SlashSpec("|")
        with self.assertRaises(ValueError):
            SlashSpec(FORWARD, modality="!")

    def test_slash_spec_double(self):
        slash = SlashSpec(FORWARD, double=True, modality=STAR)
        self.assertEqual(".", slash.modality)
        self.assertEqual("//", str(slash))
        self.assertTrue(slash.forward)

    def test___str__(self):
        self.assertEqual("(s\\^np[agr=3s])/^np", str(self.likes))
        self.assertEqual('"the bucket"', str(Singleton("the bucket")))
        self.assertEqual("@X", str(Meta("X")))
        right_nested = Complex(Basic("s"), SlashSpec(FORWARD), self.vp)
        self.assertEqual("s/(s\\^np[agr=3s])", str(right_nested))

    def test_cat_equal(self):
        a = Basic("s", FeatureBundle([("t", "pres"), ("agr", "3s")]))
        b = Basic("s", FeatureBundle([("agr", "3s"), ("t", "pres")]))
        self.assertTrue(cat_equal(a, b))
        self.assertFalse(cat_equal(a, Basic("s")))
        plain = Complex(self.vp, SlashSpec(FORWARD), Basic("np"))
        self.assertFalse(cat_equal(self.likes, plain))

    def test_arity(self):
        self.assertEqual(0, arity(self.np3s))
        self.assertEqual(1, arity(self.vp))
        self.assertEqual(2, arity(self.likes))

    def test_skeleton(self):
        self.assertEqual("(s\\^np)/^np", str(skeleton(self.likes)))
        self.assertEqual(Basic("np"), skeleton(self.np3s))

    def test_spine(self):
        self.assertEqual([self.likes, self.vp], spine(self.likes))
        self.assertEqual([], spine(self.np3s))

    def test_variables(self):
        cat = Complex(Meta("X"), SlashSpec(FORWARD),
                      Basic("np", FeatureBundle([("agr", "?a")])))
        self.assertEqual({"@X", "?a"}, category_variables(cat))
        self.assertTrue(contains_meta(cat))
        self.assertFalse(contains_meta(self.likes))

    def test_result_has_singleton(self):
        domain = Complex(Basic("s"), SlashSpec(FORWARD), Singleton("x"))
        result = Complex(Singleton("x"), SlashSpec(FORWARD), Basic("s"))
        self.assertFalse(result_has_singleton(domain))
        self.assertTrue(result_has_singleton(result))

    def test_basic_categories(self):
        self.assertEqual(["s", "np", "np"],
                         [b.name for b in basic_categories(self.likes)])

    def test_normalize_singleton(self):
        self.assertEqual(Singleton("the bucket"),
                         normalize_singleton('"the   bucket"'))
        self.assertEqual(Singleton("it"), normalize_singleton("'it'"))


if __name__ == "__main__":
    unittest.main()
