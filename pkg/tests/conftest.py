import os

os.environ.pop("POSTLIE_BUDGET", None)
