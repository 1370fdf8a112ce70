"""Build the optional compiled term kernels.

The package works without them; ``supergrass._backend`` falls back to the
pure-Python kernels when the extension is missing.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("SUPERGRASS_NO_EXT", "") in ("", "0"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("supergrass._kernels", ["src/supergrass/_kernels.pyx"],
                       extra_compile_args=["-O2"])],
            compiler_directives={"language_level": "3"},
            quiet=True,
        )

setup(ext_modules=ext_modules)
