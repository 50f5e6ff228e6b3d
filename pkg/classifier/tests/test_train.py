import numpy as np
import pytest

from ecgforge_classifier.data import BatchGenerator, carve_validation
from ecgforge_classifier.model import ModelConfig, build_model
from ecgforge_classifier.train import (
    EmptyDataset,
    NonFiniteLoss,
    TrainConfig,
    batch_input_megabytes,
    train,
    train_new,
)

TOY_CFG = TrainConfig(batch_size=32, epochs=5, seed=1)


def test_batch_generator_is_seed_deterministic():
    x = np.arange(40, dtype=np.float32).reshape(20, 2)
    y = np.arange(20, dtype=np.int64) % 5
    a = BatchGenerator(x, y, batch_size=8, seed=7)
    b = BatchGenerator(x, y, batch_size=8, seed=7)
    for epoch in range(3):
        for (ax, ay), (bx, by) in zip(a.epoch(epoch), b.epoch(epoch)):
            assert np.array_equal(ax, bx)
            assert np.array_equal(ay, by)
    # different epochs shuffle differently
    first = next(iter(a.epoch(0)))[1]
    second = next(iter(a.epoch(1)))[1]
    assert not np.array_equal(first, second)


def test_batch_generator_covers_every_item_once():
    x = np.zeros((23, 3), dtype=np.float32)
    y = np.arange(23, dtype=np.int64)
    gen = BatchGenerator(x, y, batch_size=5, seed=0)
    seen = np.concatenate([by for _, by in gen.epoch(4)])
    assert sorted(seen.tolist()) == list(range(23))
    assert len(gen) == 5


def test_carve_validation_partitions():
    x = np.zeros((50, 4), dtype=np.float32)
    y = np.arange(50, dtype=np.int64)
    (tx, ty), (vx, vy) = carve_validation(x, y, 0.1, seed=3)
    assert len(vy) == 5
    assert len(ty) == 45
    assert sorted(np.concatenate([ty, vy]).tolist()) == list(range(50))


def test_toy_training_beats_chance(toy_train_test):
    # balanced 5-class toy: chance is 0.20; the bar (0.5) was verified
    # empirically before being frozen here
    (train_x, train_y), _ = toy_train_test
    model, history = train_new(train_x, train_y, cfg=TOY_CFG)
    assert history.epochs[-1].train_acc > 0.5
    assert history.batch_input_mb == batch_input_megabytes(32, 150)


def test_identical_seeds_give_identical_first_epoch_loss(toy_train_test):
    (train_x, train_y), _ = toy_train_test
    cfg = TrainConfig(batch_size=32, epochs=1, seed=9)
    _, first = train_new(train_x, train_y, cfg=cfg)
    _, second = train_new(train_x, train_y, cfg=cfg)
    assert first.epochs[0].train_loss == second.epochs[0].train_loss
    assert first.epochs[0].train_acc == second.epochs[0].train_acc


def test_empty_dataset_raises():
    with pytest.raises(EmptyDataset):
        train_new(
            np.empty((0, 150), dtype=np.float32),
            np.empty(0, dtype=np.int64),
            cfg=TOY_CFG,
        )


def test_non_finite_loss_aborts_with_diagnostics(toy_train_test):
    (train_x, train_y), _ = toy_train_test
    bad = train_x.copy()
    bad[0, 0] = np.nan
    with pytest.raises(NonFiniteLoss) as exc:
        train_new(bad, train_y, cfg=TrainConfig(batch_size=200, epochs=1, seed=0))
    assert "epoch" in str(exc.value)


def test_early_stopping_restores_best_state(toy_train_test):
    (train_x, train_y), _ = toy_train_test
    cfg = TrainConfig(batch_size=32, epochs=8, seed=2, patience=2)
    model, history = train(build_model(ModelConfig(blocks=(8, 8, 8))),
                           train_x, train_y, cfg)
    assert history.best_epoch >= 0
    assert len(history.epochs) <= 8
