from setuptools import setup, find_packages

setup(
    #basic info
    name="blocksof",
    version="1.0.0",
    #pack-up
    packages=find_packages(exclude=["tests","tests.*"]),
    include_package_data=False,
    python_requires=">=3.7",
    install_requires=[
        "numpy>=1.20",
        "scipy>=1.6",
        "easydict>=1.9,<=1.10"
    ],
    extras_require={
        "test": ["pytest>=6.0", "hypothesis>=6.0"]
    },
    entry_points={
        "console_scripts": ["blocksof=blocksof.Cli:main"]
    },
    #meta data
    description="blocksof synthesizes static output feedback gains assigning block coefficients to the closed loop characteristic matrix polynomial.",
    long_description="Please read README.md for the command line and library usage.",
    long_description_content_type="text/markdown",
    license="Apache 2.0 license",
    keywords="control static output feedback block matrix pole assignment"
)
