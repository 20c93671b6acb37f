import setuptools

setuptools.setup(
    package_data={
        "ntlab": ["py.typed"],
    },
)
