"""Builds the optional C extension holding the edit-distance kernel.

If Cython (or a C compiler) is unavailable the install still succeeds and
the package falls back to the pure-Python kernel at import time.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "postdraft.analytics._speedups",
                ["src/postdraft/analytics/_speedups.pyx"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
