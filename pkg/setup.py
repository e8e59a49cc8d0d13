"""Build hook for the optional compiled coding kernel.

The package works without the extension (a pure-Python kernel is selected at
import time); building it just makes encode/decode roughly 20x faster.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "envcode._ckernel",
                ["src/envcode/_ckernel.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
