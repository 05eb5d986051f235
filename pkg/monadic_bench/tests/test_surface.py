import unittest
from unittest import TestCase

from monadic_bench.core.surface import SurfaceItem, tokenize, surface_text
from monadic_bench.core.errors import UnbalancedMweBars


class TestSurface(TestCase):
    """Test the tokenizer of input expressions
    """

    def test_tokenize(self):
        items = tokenize("Sincerity admires  John")
        self.assertEqual(["Sincerity", "admires", "John"],
                         [item.text for item in items])
        self.assertFalse(any(item.is_mwe for item in items))

    def test_tokenize_mwe(self):
        items = tokenize("John kicked |the   bucket|")
        self.assertEqual(3, len(items))
        self.assertEqual(SurfaceItem("the bucket", is_mwe=True), items[2])
        self.assertEqual(("the", "bucket"), items[2].words)

    def test_tokenize_bound(self):
        items = tokenize("walk+ed home")
        self.assertEqual([SurfaceItem("walk"),
                          SurfaceItem("ed", bound_before=True),
                          SurfaceItem("home")], items)

    def test_tokenize_invalid(self):
        with self.assertRaises(UnbalancedMweBars):
            tokenize("kicked |the bucket")
        with self.assertRaises(UnbalancedMweBars):
            tokenize("kicked || now")

    def test_surface_text(self):
        text = "John kicked |the bucket| walk+ed"
        self.assertEqual(text, surface_text(tokenize(text)))
        self.assertEqual([], tokenize("   "))


if __name__ == "__main__":
    unittest.main()
