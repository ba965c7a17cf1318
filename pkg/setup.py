"""Build script: compiles the optional C extension for the hot kernels.

The package is fully functional without the extension (a pure-Python
backend is selected at import time), so compilation failures only cost
speed, not correctness.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build the extension if possible; fall back to pure Python otherwise."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            print(f"warning: skipping C extension build ({exc}); "
                  "ladderflow will use the pure-Python kernels")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: failed to build {ext.name} ({exc}); "
                  "ladderflow will use the pure-Python kernels")


extensions = []
try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "ladderflow._native",
                ["src/ladderflow/_native.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    print("warning: Cython not available; building without the C extension")

setup(ext_modules=extensions, cmdclass={"build_ext": OptionalBuildExt})
