import hypothesis

# numeric property tests iterate maps thousands of times; wall-clock deadlines
# only produce flaky failures there
hypothesis.settings.register_profile("numeric", deadline=None, max_examples=100)
hypothesis.settings.load_profile("numeric")
