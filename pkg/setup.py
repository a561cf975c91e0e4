from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install; planner falls back at import
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "kickplan.search._astar",
                ["src/kickplan/search/_astar.pyx"],
                extra_compile_args=["-O3", "-ffp-contract=off"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
