# Local settings. Copy values from settings_default.py and change them here.
from settings_default import *  # noqa: F403
