"""
Comparing padding schemes
=========================

Each padding scheme trades bandwidth (beta) for attacker uncertainty
(alpha1, in bits) and crowd size (alpha2).  This walks through one instance
of every kind on the synthetic company table.
"""

# %%
from suci_pad import evaluate, parse
from suci_pad.sweep import builtin_dataset

company = builtin_dataset("Comp-synth")

codes = [
    "identity",
    "blk-4-8",
    "pwr-2-8",
    "rndBlk-4-2-8",
    "rndLen-4",
    "taBlk-7-16-30",
    f"maxL-{company.max_length}",
]

# %%
# ``hU`` is the ceiling for alpha1: the attacker learns nothing once the
# padded length is constant (maxL).  ``alpha2`` tops out at the population.
print(f"{'scheme':16s} {'alpha1':>7s} {'alpha2':>7s} {'beta':>6s} {'delta':>6s}")
for code in codes:
    r = evaluate(company, parse(code))
    print(f"{code:16s} {r.alpha1:7.3f} {r.alpha2:7d} {r.beta:6.3f} {r.delta:6.3f}")

# %%
# Randomized schemes are evaluated exactly, not by sampling: each input
# length maps to a known set of equally likely outputs.
from suci_pad import padded_length

print(padded_length(parse("rndBlk-4-3-8"), 5).as_dict())
print(padded_length(parse("rndLen-2"), 4).as_dict())
