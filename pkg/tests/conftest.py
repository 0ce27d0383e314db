import sys
from pathlib import Path

from hypothesis import HealthCheck, settings

# goldens.py lives next to the test modules
sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SCENARIO_DIR = Path(__file__).resolve().parent.parent / "scenarios"
