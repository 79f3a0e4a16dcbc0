from _gburgers import *  # noqa: F401,F403
