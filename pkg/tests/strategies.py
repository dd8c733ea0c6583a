from hypothesis import strategies as st

from artin.freeword import Word

syllable = st.tuples(st.sampled_from("ab"), st.integers(-5, 5).filter(bool))
words = st.lists(syllable, max_size=8).map(Word.reduce)
short_words = st.lists(syllable, max_size=4).map(Word.reduce)
coefficients = st.integers(3, 6)
