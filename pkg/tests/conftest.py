from hypothesis import HealthCheck, settings

settings.register_profile(
    "charsum",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("charsum")
