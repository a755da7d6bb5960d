"""Build the optional Cython permanent kernels.

Without Cython (or a compiler) the package installs in pure-Python mode and
``photonet.permanent`` falls back to the numpy implementation.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("photonet.permanent._kernels", ["src/photonet/permanent/_kernels.pyx"],
                   extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
