import os
import sys

from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

# derandomized so that every run draws the same examples
settings.register_profile("repro", derandomize=True, deadline=None, max_examples=25, print_blob=True)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repro"))
