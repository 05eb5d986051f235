import os
import tempfile
import unittest
from unittest import TestCase
from unittest import mock
import numpy as np

from monadic_bench.core.grammar_io import (load_grammar, source_grammar,
                                           parse_supervision,
                                           parse_grammar_text, ExperimentSpec)
from monadic_bench.core.processor_config import ProcessorConfig
from monadic_bench.core.trainer import Trainer
from monadic_bench.core.errors import EmptySupervision, UnknownPreFunction

DATA = os.path.join(os.path.dirname(__file__), "..", "examples", "data")


class TestTrainer(TestCase):
    """Test the `Trainer` class
    """

    def setUp(self):
        grammar, errors = load_grammar(os.path.join(DATA, "control.txt"))
        assert not errors, errors
        self.grammar = source_grammar(grammar)
        with open(os.path.join(DATA, "control_pairs.txt"), "r",
                  encoding="utf-8") as sup_file:
            self.pairs, errors = parse_supervision(sup_file.read())
        assert not errors, errors
        self.spec = ExperimentSpec(4000, 2000, 10, 0.5, 1.0, "boff")

    def test___init___invalid(self):
        with self.assertRaises(EmptySupervision):
            Trainer(self.grammar, [], self.spec)
        with self.assertRaises(ValueError) as ve:
            Trainer(self.grammar, self.pairs, self.spec, num_candidates=0)
        self.assertEqual("num_candidates must be at least 1",
                         str(ve.exception))
        with self.assertRaises(UnknownPreFunction):
            ExperimentSpec(4000, 2000, 10, 0.5, 1.0, "bad", "bogus-fn")

    def test___init__(self):
        trainer = Trainer(self.grammar, self.pairs, self.spec)
        self.assertEqual(["epoch", "rate", "accuracy", "skipped", "failed",
                          "seconds"], trainer.get_history().columns.tolist())
        self.assertEqual(["epoch"] + [str(k) for k in range(1, 10)],
                         trainer.get_weight_history().columns.tolist())
        self.assertEqual(10, trainer.num_epochs())
        # memory hints set the chart ceiling
        self.assertEqual(4000000, trainer.get_model().get_config().max_items)

    def test_pre_function(self):
        config = ProcessorConfig()
        spec = ExperimentSpec(4000, 2000, 10, 0.5, 1.0, "nfp", "nfparse-off")
        trainer = Trainer(self.grammar, self.pairs, spec, config)
        self.assertFalse(trainer.get_model().get_config().nfparse)
        self.assertTrue(config.nfparse)

    def test_learning_rate(self):
        trainer = Trainer(self.grammar, self.pairs, self.spec)
        self.assertEqual(0.5, trainer.learning_rate(1))
        self.assertEqual(0.25, trainer.learning_rate(2))
        self.assertEqual(0.125, trainer.learning_rate(4))

    def test_accuracy(self):
        trainer = Trainer(self.grammar, self.pairs, self.spec)
        # the promise tie goes to the subject reading's competitor
        self.assertAlmostEqual(2 / 3, trainer.accuracy())

    def test_run(self):
        trainer = Trainer(self.grammar, self.pairs, self.spec)
        candidates = trainer.run()
        history = trainer.get_history()
        self.assertEqual(11, len(history))
        self.assertAlmostEqual(2 / 3, history["accuracy"].iloc[0])
        self.assertEqual(1.0, history["accuracy"].iloc[1])
        self.assertEqual(1.0, history["accuracy"].iloc[-1])
        self.assertEqual([0, 0],
                         history[["skipped", "failed"]].iloc[1].tolist())
        self.assertEqual(11, len(trainer.get_weight_history()))
        self.assertEqual(3, len(candidates))
        self.assertEqual(["10", "9", "8"], [c.label for c in candidates])
        theta = trainer.get_model().get_theta()
        # persuaded (p x) and promised (p y) gained weight
        self.assertGreater(theta[4], theta[5])
        self.assertGreater(theta[7], theta[6])
        self.assertEqual(theta[4], candidates[0].grammar.get_element(5).weight)
        # the unambiguous elements never move
        self.assertTrue(np.allclose(np.ones(4), theta[:4]))
        self.assertAlmostEqual(1.0, theta[8])

    def test_run_zero_rate(self):
        spec = ExperimentSpec(4000, 2000, 3, 0.0, 1.0, "still")
        trainer = Trainer(self.grammar, self.pairs, spec)
        candidates = trainer.run()
        self.assertTrue(np.array_equal(np.ones(9),
                                       trainer.get_model().get_theta()))
        self.assertEqual(["3", "2", "1"], [c.label for c in candidates])
        self.assertTrue(all(abs(c.accuracy - 2 / 3) < 1e-12
                            for c in candidates))

    def test_run_extrapolated(self):
        spec = ExperimentSpec(7000, 4000, "xp", 1.2, 1.0, "nfp")
        trainer = Trainer(self.grammar, self.pairs, spec, num_candidates=2)
        self.assertEqual(20, trainer.num_epochs())
        candidates = trainer.run()
        history = trainer.get_history()
        self.assertEqual(22, len(history))
        self.assertEqual("xp", history["epoch"].iloc[-1])
        self.assertEqual(21, len(trainer.get_weight_history()))
        self.assertEqual(2, len(candidates))
        self.assertEqual("xp", candidates[0].label)
        self.assertEqual(1.0, candidates[0].accuracy)

    def test_run_beam(self):
        config = ProcessorConfig(beam=True)
        trainer = Trainer(self.grammar, self.pairs, self.spec, config)
        trainer.run()
        self.assertEqual(1.0, trainer.get_history()["accuracy"].iloc[-1])

    def test_run_unanalysable(self):
        grammar, _ = parse_grammar_text("Mary | n :: np : mary\n", "tiny")
        pairs, _ = parse_supervision("Mary sleeps : sleep mary\n")
        trainer = Trainer(source_grammar(grammar), pairs, self.spec)
        candidates = trainer.run()
        self.assertEqual(1, trainer.get_history()["failed"].iloc[1])
        self.assertEqual(0.0, candidates[0].accuracy)

    def test_write_outputs(self):
        trainer = Trainer(self.grammar, self.pairs, self.spec)
        candidates = trainer.run()
        with tempfile.TemporaryDirectory() as directory:
            with mock.patch("monadic_bench.core.trainer.Plotter."
                            "plot_traces") as mock_plot:
                mock_plot.return_value = os.path.join(
                    directory, "boff-0.5-1.0-10-traces.png")
                paths = trainer.write_outputs(candidates, directory,
                                              plot=True)
                mock_plot.assert_called_once()
                self.assertEqual("boff-0.5-1.0-10",
                                 mock_plot.call_args[0][1])
            names = [os.path.basename(path) for path in paths]
            self.assertEqual(["boff-0.5-1.0-10-cand1.txt",
                              "boff-0.5-1.0-10-cand2.txt",
                              "boff-0.5-1.0-10-cand3.txt",
                              "boff-0.5-1.0-10.log",
                              "boff-0.5-1.0-10-traces.png"], names)
            reread, errors = load_grammar(paths[0])
            self.assertEqual([], errors)
            self.assertEqual(9, len(reread))
            with open(paths[3], "r", encoding="utf-8") as log_file:
                log = log_file.read()
        self.assertIn("run boff-0.5-1.0-10", log)
        self.assertIn("cand1 epoch 10 accuracy 1.0000", log)


if __name__ == "__main__":
    unittest.main()
