"""Wound status assessment from vital-sign telemetry.

Clinical banding of raw sensor values, a rule-based labeling oracle, an
entropy / information-gain decision tree, and the evaluation metrics that go
with it. The heavy lifting lives in the compiled `_core` extension; this
package re-exports its public surface.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
