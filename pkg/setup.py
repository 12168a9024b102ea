from Cython.Build import cythonize
from setuptools import Extension, setup

ext = Extension(
    "nncascade._ckernels",
    ["src/nncascade/_ckernels.pyx"],
    language="c++",
    extra_compile_args=["-O3"],
)

setup(ext_modules=cythonize([ext], compiler_directives={"language_level": "3"}))
