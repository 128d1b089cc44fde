from setuptools import setup, find_packages

setup(
    name="quasirandom-cert",
    version="0.1.0",
    description="Exact certifier for quasi-randomness of equal-parts restricted subgraph counts",
    long_description=open("README.md", encoding="utf-8").read(),
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "tests.*"]),
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.10",
    install_requires=[
        "numpy>=1.22.0",
        "networkx>=2.8",
        "pydantic>=2.0",
    ],
    extras_require={
        "test": [
            "pytest>=7.0",
            "sympy>=1.11",
        ],
    },
    entry_points={
        "console_scripts": [
            "qr-cert=qr_cert.main:main",
        ],
    },
)
