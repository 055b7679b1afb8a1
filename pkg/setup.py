import os
import sys

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("COBETWEEN_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        import numpy as np

        ext_modules = cythonize(
            [
                Extension(
                    "cobetween._core",
                    ["src/cobetween/_core.pyx"],
                    include_dirs=[np.get_include()],
                    language="c++",
                    extra_compile_args=["-O3"],
                )
            ],
            language_level=3,
        )
    except ImportError as exc:  # pure-Python fallback still installs
        print(f"cobetween: building without compiled core ({exc})", file=sys.stderr)

setup(ext_modules=ext_modules)
