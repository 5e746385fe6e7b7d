from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

extensions = [
    Extension(
        "matchpoint._native",
        ["src/matchpoint/_native.pyx"],
        language="c++",
        extra_compile_args=["-O3"],
    )
]

# Without Cython the package still installs; the pure-Python kernels take over.
setup(
    ext_modules=cythonize(extensions, compiler_directives={"language_level": "3"})
    if cythonize is not None
    else [],
)
