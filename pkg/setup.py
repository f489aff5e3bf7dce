"""Build script.  The compiled path-counting kernel is optional: when Cython
(or a C compiler) is unavailable the package installs pure-Python only and
quasi3.paths falls back to the _pypaths twin at import time."""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("quasi3._speedups", ["src/quasi3/_speedups.pyx"])],
        language_level="3",
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
