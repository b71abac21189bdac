"""Build hook for the optional compiled kernels.

Metadata lives in pyproject.toml.  When Cython or a compiler is missing the
package still installs and runs on the pure-Python kernels.
"""
from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "tameconf._kernels",
                ["src/tameconf/_kernels.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
