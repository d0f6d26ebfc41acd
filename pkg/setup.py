import setuptools

with open("README.md", "r", encoding='utf-8') as readme_file:
    long_description = readme_file.read()

with open('requirements.txt', 'r', encoding='utf-8') as req_file:
    requirements = [r.strip() for r in req_file.readlines() if r.strip()]

setuptools.setup(
    name="mapwit",
    version="1.0.0",
    description="Recognizes k-map graphs of bounded treewidth and reports "
                "witnesses",
    long_description=long_description,
    long_description_content_type="text/markdown",
    license='MIT',
    packages=setuptools.find_packages(exclude=['examples', 'examples.*']),
    python_requires='>=3.7',
    install_requires=requirements,
    entry_points={
        'console_scripts': ['mapwit=mapwit.src.cli:main'],
    },
)
