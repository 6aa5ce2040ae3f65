from hypothesis import settings

# first call into a compiled kernel pays the JIT cost; wall-clock deadlines
# would turn that into flaky failures
settings.register_profile("bagraphs", deadline=None, max_examples=50)
settings.load_profile("bagraphs")
