"""Build config for the optional compiled kernel.

The extension links against MPFR and uses the gmpy2 C API.  If anything is
missing (no compiler, no headers) the build falls back to a pure-Python
install; the package selects the kernel backend at import time.
"""

import os

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # keep the pure-Python install usable
            print(f"warning: skipping compiled kernels ({exc})")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: skipping {ext.name} ({exc})")


def extensions():
    try:
        import gmpy2
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError as exc:
        print(f"warning: compiled kernels disabled ({exc})")
        return []
    include = os.path.dirname(gmpy2.__file__)
    ext = Extension(
        "chaingamma._kernels",
        sources=["src/chaingamma/_kernels.pyx"],
        include_dirs=[include],
        libraries=["mpfr", "gmp"],
        extra_compile_args=["-O2"],
    )
    return cythonize([ext], language_level=3)


setup(
    ext_modules=extensions(),
    cmdclass={"build_ext": OptionalBuildExt},
)
