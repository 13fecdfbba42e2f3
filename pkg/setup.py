"""Build the optional compiled ray casting kernel.

The package works without it (a numpy fallback is selected at import);
build failures are therefore non-fatal.
"""

import numpy as np
from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/safefilter/_raycast.pyx",
        compiler_directives={"language_level": "3"},
    )
except Exception:  # pragma: no cover - cython unavailable
    ext_modules = []

setup(
    ext_modules=ext_modules,
    include_dirs=[np.get_include()],
)
