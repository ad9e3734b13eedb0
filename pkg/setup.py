"""Build script with an optional Cython extension for the transform hot loops.

The package is fully functional without the extension (a numpy fallback is
selected at import time); build failures are therefore non-fatal.
"""
import sys

from setuptools import setup

ext_modules = []
cmdclass = {}

try:
    from Cython.Build import cythonize
    from setuptools import Extension
    import numpy as np

    ext_modules = cythonize(
        [
            Extension(
                "hypharm._kernels",
                ["src/hypharm/_kernels.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - exercised only on broken toolchains
    sys.stderr.write(f"hypharm: skipping Cython extension ({exc}); "
                     "pure-numpy kernels will be used\n")
    ext_modules = []

setup(ext_modules=ext_modules, cmdclass=cmdclass)
