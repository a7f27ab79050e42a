from setuptools import find_packages, setup

with open("requirements.txt") as f:
    requirements = f.read().splitlines()

setup(
    name="cdmc",
    version="1.0",
    install_requires=requirements,
    packages=find_packages(exclude=["tests", "examples", "examples.*"]),
    py_modules=["main", "errors", "metrics", "random_streams", "settings", "settings_default"],
    entry_points={
        "console_scripts": [
            "cdmc = main:main",
        ],
    },
)
