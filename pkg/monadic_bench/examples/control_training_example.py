#
# Using the framework for object and subject control
#

import os

from monadic_bench import load_grammar, source_grammar, parse_supervision
from monadic_bench import Model
from monadic_bench import ExperimentSpec, Trainer
from monadic_bench import render_ranked


data = os.path.join(os.path.dirname(__file__), "data")

# 1. Reading and sourcing the grammar
# Both readings of persuaded and promised start with weight 1.0
grammar, errors = load_grammar(os.path.join(data, "control.txt"))
for error in errors:
    print(error)
sourced = source_grammar(grammar)

# 2. Ranking before training
# The two control readings tie, so each gets probability 0.5
model = Model(sourced)
sentence = "Mary promised Harry to study"
print(render_ranked(model.rank(sentence), sentence, bare=True))

# 3. Training on the three supervision pairs
with open(os.path.join(data, "control_pairs.txt"), "r",
          encoding="utf-8") as file:
    pairs, errors = parse_supervision(file.read())
# 10 epochs, learning rate 0.5 decaying with rate 1.0
spec = ExperimentSpec(0, 0, 10, 0.5, 1.0, "control")
trainer = Trainer(sourced, pairs, spec)
candidates = trainer.run()
print(trainer.get_history())

# 4. Ranking with the best candidate
best = Model(candidates[0].grammar)
print(render_ranked(best.rank(sentence), sentence, bare=True))
