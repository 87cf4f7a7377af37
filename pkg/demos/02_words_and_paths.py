"""Encode sortable permutations as sorting words and as lattice paths, and decode them back."""

from popsort.perms import format_permutation
from popsort.words import (count_rows, path_to_word, perm_to_path, perm_to_word, word_in_W,
                           word_to_perm, words_W)

p = (3, 1, 2, 7, 4, 6, 5)
w = perm_to_word(p)
m = perm_to_path(p)
print(f"{format_permutation(p, compact=True)}: word {w}, path {m}")
print(f"path back to word: {path_to_word(m)}; word back to permutation: "
      f"{format_permutation(word_to_perm(w), compact=True)}")
print()

w = "0110210220102"
print(f"the word {w} is in W: {word_in_W(w)}")
print(f"it decodes to {format_permutation(word_to_perm(w))}")
print()

print("all sorting words of length 4 and their permutations:")
for w in words_W(4):
    print(f"   {w}  {format_permutation(word_to_perm(w), compact=True)}")
print()

print("n, |W_n|, |M_n|, F_(2n-1):")
for row in count_rows(12):
    print("   " + "  ".join(f"{v:>6}" for v in row))
