import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("UBBPLAN_SKIP_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("ubbplan._kernels", ["src/ubbplan/_kernels.pyx"])],
            language_level=3,
        )
    except ImportError:
        # No Cython: install pure-Python only, the fallback kernels take over.
        ext_modules = []

setup(ext_modules=ext_modules)
