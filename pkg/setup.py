#!/usr/bin/env python3
"""
Setup script for the TDoS simulator
"""

from setuptools import setup, find_packages
from pathlib import Path

# Read README file
this_directory = Path(__file__).parent
long_description = (this_directory / "README.md").read_text(encoding="utf-8")

setup(
    name="tdos-sim",
    version="1.0.0",
    description="Tactical edge cloud simulator with EDoS/TDoS attack injection and detection",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(where="src"),
    package_dir={"": "src"},
    python_requires=">=3.8",
    install_requires=[
        "numpy>=1.20.0",
        "networkx>=2.6",
        "PyYAML>=5.4",
    ],
    extras_require={
        "dev": [
            "black>=22.0.0",
            "pytest>=6.0.0",
            "pytest-cov>=2.0.0",
            "flake8>=4.0.0",
        ],
    },
    entry_points={
        "console_scripts": [
            "tdos-sim=runners.cli:main",
        ],
    },
    include_package_data=True,
    package_data={
        "scenarios": ["*.yaml", "*.md"],
    },
    keywords="edge cloud tactical edos tdos discrete event simulation nfv",
)
