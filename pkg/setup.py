import os
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    # the package works without the extension, so a failed compile only warns
    def run(self):
        try:
            super().run()
        except Exception as exc:
            print(f"warning: compiled kernels not built ({exc}); using the pure-Python fallback")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: building {ext.name} failed ({exc}); using the pure-Python fallback")


ext_modules = []
if os.environ.get("ENTROPLEX_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        # limited-range complex arithmetic avoids the slow C99 __muldc3 path
        flags = [] if sys.platform == "win32" else ["-O3", "-fcx-limited-range"]
        ext_modules = cythonize(
            [Extension("entroplex._kernels", ["src/entroplex/_kernels.pyx"], extra_compile_args=flags)],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
