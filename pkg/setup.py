import os

from setuptools import setup

ext_modules = []
if os.environ.get("RNCGALOIS_PURE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/rncgalois/_kernel.pyx"],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
    except ImportError:
        # pure-Python fallback kernel is used when the extension is absent
        ext_modules = []

setup(ext_modules=ext_modules)
