"""
How much does an unpadded SUCI leak?
=====================================

AES-CTR keeps the plaintext length, so an eavesdropper learns the exact
username length from every SUCI.  Here we measure what that is worth on two
bundled synthetic name-length tables.
"""

# %%
# Load the tables.  ``Nation-synth`` has the shape of a national register
# (ten million people); ``Comp-synth`` looks like one country office of a
# company (a few thousand employees).
from suci_pad import entropy, min_class, padded_length, parse
from suci_pad.sweep import builtin_dataset

nation = builtin_dataset("Nation-synth")
company = builtin_dataset("Comp-synth")

for t in (nation, company):
    length, count = min_class(t)
    print(f"{t.label:13s} population={t.population():>9,d}  H(U)={entropy(t):.3f} bits  "
          f"rarest length={length} ({count} people)")

# %%
# Without padding, the anonymity set for an observed length is exactly the
# people with that length.  The smallest class is the k in k-anonymity:
# a handful of people nationally, a single person in the company.
print("unpadded k-anonymity:", min_class(nation)[1], "/", min_class(company)[1])

# %%
# The tails are where the damage is.  List the company's lengths with
# fewer than 10 people.
exposed = [(u, c) for u, c in company if c < 10]
print("company lengths with < 10 people:", exposed)

# %%
# Padding merges those classes.  With tail-aware block padding, everything
# below 7 goes to 7 and everything above 16 goes to 30, so the rare lengths
# hide inside much larger groups.
scheme = parse("taBlk-7-16-30")
for u, c in exposed:
    (p,) = padded_length(scheme, u).lengths
    print(f"  length {u:2d} -> observed {p}")
