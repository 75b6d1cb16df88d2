"""Bundled datasets: shape, determinism, and on-disk format."""

from batchlens.annotations import load_dataset
from batchlens.datagen import (
    DATASETS,
    dataset_images,
    render_image,
    write_dataset,
)
from batchlens.raster import checksum, load_image


def test_dataset_densities():
    # Table-style densities: sparse objects, mid-size wedding groups,
    # dense receipts
    objects = dataset_images("objects")
    wedding = dataset_images("wedding")
    receipts = dataset_images("receipts")
    assert 2 <= sum(map(len, objects.values())) / len(objects) <= 6
    assert 8 <= sum(map(len, wedding.values())) / len(wedding) <= 12
    assert all(len(img) == 59 for img in receipts.values())


def test_builders_are_deterministic():
    for name, build in DATASETS.items():
        a, b = build(), build()
        assert sorted(a) == sorted(b)
        for image_id in a:
            assert {o.id: (o.props, o.bbox) for o in a[image_id]} \
                == {o.id: (o.props, o.bbox) for o in b[image_id]}


def test_ids_unique_and_typed():
    for name in DATASETS:
        for image_id, img in dataset_images(name).items():
            ids = [o.id for o in img]
            assert len(set(ids)) == len(ids)
            for o in img:
                assert o.object_type


def test_write_dataset_round_trips(tmp_path):
    written = write_dataset("recital", tmp_path)
    assert len(written) == 3
    ds = load_dataset(tmp_path)
    source = dataset_images("recital")
    assert sorted(ds) == sorted(source)
    for image_id, ann in ds.items():
        want = {o.id: (o.bbox, o.object_type) for o in source[image_id]}
        got = {o.id: (o.bbox, o.object_type) for o in ann.objects}
        assert got == want
        raster = load_image(tmp_path / ann.image_path)
        assert raster.ndim == 3


def test_render_is_deterministic():
    objs = list(dataset_images("recital")["ra"])
    a = render_image(objs, (90, 50))
    b = render_image(objs, (90, 50))
    assert checksum(a) == checksum(b)
    assert a.shape == (50, 90, 3)
