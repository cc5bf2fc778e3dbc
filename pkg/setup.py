from setuptools import setup, find_packages

# Read the long description from README.md
with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setup(
    name="qram_repair_workbench",
    version="0.1.0",
    description="Yield, resource and circuit workbench for redundancy repair in fault-tolerant qRAM",
    long_description=long_description,
    long_description_content_type="text/markdown",
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Physics",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Operating System :: OS Independent",
    ],
    packages=find_packages(exclude=["tests", "examples", "examples.*"]) + ["core"],
    py_modules=["cli", "main"],
    include_package_data=True,
    python_requires=">=3.9",
    install_requires=[
        "pandas>=1.5.0",
        "openpyxl>=3.0.0",
        "matplotlib>=3.4.0",
        "seaborn>=0.11.0",
        "numpy>=1.22.0",
        "scipy>=1.10.0",
        "schema>=0.7.0",
    ],
    entry_points={
        "console_scripts": [
            "qram-workbench=cli:main",
        ],
    },
)
