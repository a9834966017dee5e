import random

from hypothesis import settings, strategies as st

settings.register_profile("default", max_examples=25, deadline=None)
settings.load_profile("default")

rngs = st.integers(min_value=0, max_value=10**6).map(random.Random)
