"""
Padding inside SUCI concealment
===============================

The padding hook sits right before encryption.  Two users with very
different username lengths become indistinguishable on the air.
"""

# %%
from suci_pad import Nai, conceal, generate_keypair, observed_length, parse, reveal

home_sk, home_pk = generate_keypair()
users = [Nai("bo", "corp.example"), Nai("maximiliana.vonschwarzenberg", "corp.example")]

# %%
# No padding: the ciphertext length is the username length.
for nai in users:
    msg = conceal(nai, "profileA", parse("identity"), home_pk)
    print(f"{nai.username:30s} observed length {observed_length(msg)}")

# %%
# Tail-aware padding: short names go up to 6, long names up to 30.
pad = parse("taBlk-6-15-30")
for nai in users:
    msg = conceal(nai, "profileA", pad, home_pk)
    print(f"{nai.username:30s} observed length {observed_length(msg)}")
    print("   ", msg.to_text()[:72], "...")
    assert reveal(msg, pad, home_sk) == nai

# %%
# Every concealment uses a fresh ephemeral key, so repeated SUCIs for the
# same user do not match -- but their lengths do, which is why the padding
# has to be there.
a = conceal(users[0], "profileA", pad, home_pk)
b = conceal(users[0], "profileA", pad, home_pk)
print("same ciphertext:", a.ciphertext == b.ciphertext, " same length:",
      observed_length(a) == observed_length(b))
