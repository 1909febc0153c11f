"""Smoke tests for the Python module."""
import json
import os
import sys
import unittest

FIXTURES = os.environ.get("SHLEIB_FIXTURES", os.path.join(os.path.dirname(__file__), "..", "..", "fixtures"))


def fx(name):
    return os.path.join(FIXTURES, name + ".leib")


class Signs(unittest.TestCase):
    def test_koszul(self):
        import shleib
        self.assertEqual(shleib.koszul_sign([2, 1], [1, 1]), -1)
        self.assertEqual(shleib.koszul_sign([2, 3, 1], [1, 1, 2]), -1)
        self.assertEqual(shleib.anti_koszul_sign([2, 1], [1, 2]), -1)
        with self.assertRaises(ValueError):
            shleib.koszul_sign([2, 1], [1])

    def test_unshuffles_and_prefactors(self):
        import shleib
        self.assertEqual(shleib.unshuffles(2, 1), [[1, 2, 3], [1, 3, 2], [2, 3, 1]])
        self.assertEqual([shleib.derived_bracket_prefactor(i) for i in range(1, 6)], [1, 1, -1, -1, 1])
        self.assertEqual(shleib.normalize_rational("-4/6"), "-2/3")


class Models(unittest.TestCase):
    def test_valid_fixture(self):
        import shleib
        m = shleib.Model.from_file(fx("mc-dglie"))
        self.assertEqual(m.basis, [("h", 0), ("p", 1), ("q", 1), ("r", 2)])
        self.assertTrue(m.has_family)
        self.assertEqual(m.order, 2)
        self.assertEqual(m.check_leibniz(), [])
        self.assertEqual(m.check_deformation(), [])
        self.assertEqual(m.check_sh(6), [])
        self.assertEqual(m.check_codifferential(4), [])
        self.assertEqual(m.compare_routes(), [])
        self.assertEqual(m.check_gauge_equivalence(3), [])
        self.assertEqual(m.check_key_lemma(2), [])
        self.assertEqual(len(m.derived_brackets()), 3)
        self.assertEqual(m.derived_brackets()[1][("h", "p")], "r:-1")
        self.assertEqual(len(m.gauge_transform()), 3)

    def test_broken_fixture(self):
        import shleib
        m = shleib.Model.from_file(fx("mc-dglie-broken"))
        v = m.check_sh(6, first_violation=True)
        self.assertEqual(v, [{"label": "sh-leibniz", "scope": 2, "tuple": ["h"], "residual": "r:1"}])
        self.assertNotEqual(m.check_codifferential(4), [])
        report = json.loads(m.run("check-sh"))
        self.assertEqual(report["verdict"], "fail")
        self.assertNotIn("timing_ms", report)

    def test_round_trip_and_errors(self):
        import shleib
        text = open(fx("l2b")).read()
        m = shleib.Model(text)
        self.assertEqual(shleib.Model(m.serialize()).serialize(), m.serialize())
        with self.assertRaises(shleib.MalformedInput) as ctx:
            shleib.Model("basis x 0\nbracket x y = x:1\n")
        self.assertIn("line 2", str(ctx.exception))
        with self.assertRaises(ValueError):
            shleib.Model("basis x 0\nbracket x x = x:1\n").run("frobnicate")

    def test_mc_rejection(self):
        import shleib
        m = shleib.Model.from_file(fx("mc-dglie-nonmc"))
        with self.assertRaises(shleib.PreconditionError):
            m.check_deformation()
        self.assertIn("first failing order 2", m.run("check-deformation", format="text"))


if __name__ == "__main__":
    if len(sys.argv) >= 3:
        sys.path.insert(0, sys.argv[1])
        FIXTURES = sys.argv[2]
        del sys.argv[1:3]
    unittest.main(verbosity=2)
