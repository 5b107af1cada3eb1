from setuptools import setup, find_packages

setup(
    name="perfect-latin-rectangles",
    version="0.1.0",
    description="Construction, width extension, search and verification of perfect Latin rectangles",
    packages=find_packages(exclude=["tests", "tests.*"]),
    python_requires=">=3.10",
    install_requires=[
        "numpy>=1.26",
        "sympy>=1.12",
        "pydantic==2.11.7",
        "pydantic-settings==2.10.1",
        "python-dotenv==1.0.0",
    ],
    entry_points={
        "console_scripts": [
            "perfect-latin=perfect_latin.cli.main:main",
        ],
    },
)
