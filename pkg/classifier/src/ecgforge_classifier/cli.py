"""ecgforge-clf: train and evaluate the heartbeat classifier on ecgforge
exports (.ecgb or .csv).  Flags mirror TrainConfig."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import torch

from .ablation import ablation_downsampling
from .ecgb import FormatError, load_dataset
from .evaluate import evaluate
from .model import ModelConfig, build_model, count_params
from .train import TrainConfig, train

def _model_config(args) -> ModelConfig:
    if args.channels:
        blocks = tuple(int(c) for c in args.channels.split(","))
        return ModelConfig(blocks=blocks)
    return ModelConfig()


def _train_config(args) -> TrainConfig:
    return TrainConfig(
        batch_size=args.batch_size,
        epochs=args.epochs,
        learning_rate=args.lr,
        seed=args.seed,
        device=args.device,
    )


def cmd_params(args) -> int:
    print(count_params(build_model(_model_config(args))))
    return 0


def cmd_train(args) -> int:
    train_x, train_y, _ = load_dataset(args.train)
    test_x, test_y, _ = load_dataset(args.test)
    model = build_model(_model_config(args))
    model, history = train(model, train_x, train_y, _train_config(args))
    report = evaluate(model, test_x, test_y, args.batch_size, args.device)
    report.epoch_seconds = history.seconds_per_epoch
    report.batch_input_mb = history.batch_input_mb

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    torch.save(
        {"state_dict": model.state_dict(), "config": vars(_model_config(args))},
        out_dir / "model.pt",
    )
    (out_dir / "eval.txt").write_text(report.to_text())
    (out_dir / "confusion.csv").write_text(report.confusion_csv())
    print(report.to_text(), end="")
    print(f"saved={out_dir / 'model.pt'}")
    return 0


def cmd_evaluate(args) -> int:
    test_x, test_y, _ = load_dataset(args.test)
    payload = torch.load(args.model, weights_only=False)
    model = build_model(ModelConfig(**payload["config"]))
    model.load_state_dict(payload["state_dict"])
    report = evaluate(model, test_x, test_y, args.batch_size, args.device)
    print(report.to_text(), end="")
    return 0


def cmd_ablate(args) -> int:
    raw_train = load_dataset(args.raw_train)[:2]
    raw_test = load_dataset(args.raw_test)[:2]
    down_train = load_dataset(args.down_train)[:2]
    down_test = load_dataset(args.down_test)[:2]
    result = ablation_downsampling(
        raw_train, raw_test, down_train, down_test,
        _model_config(args), _train_config(args),
    )
    print(result.to_text(), end="")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="ecgforge-clf", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def training_flags(p):
        p.add_argument("--epochs", type=int, default=50)
        p.add_argument("--batch-size", dest="batch_size", type=int, default=512)
        p.add_argument("--lr", type=float, default=1e-3)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--device", default="cpu")
        p.add_argument("--channels", help="per-block channels, e.g. 128,64,32")

    p = sub.add_parser("params", help="print the trainable parameter count")
    p.add_argument("--channels", help="per-block channels, e.g. 128,64,32")
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("train", help="train and evaluate")
    p.add_argument("--train", required=True, help=".ecgb or .csv")
    p.add_argument("--test", required=True)
    p.add_argument("--out", default="clf_out")
    training_flags(p)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("evaluate", help="evaluate a saved model")
    p.add_argument("--model", required=True)
    p.add_argument("--test", required=True)
    p.add_argument("--batch-size", dest="batch_size", type=int, default=512)
    p.add_argument("--device", default="cpu")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("ablate", help="raw vs downsampled comparison")
    p.add_argument("--raw-train", required=True)
    p.add_argument("--raw-test", required=True)
    p.add_argument("--down-train", required=True)
    p.add_argument("--down-test", required=True)
    training_flags(p)
    p.set_defaults(func=cmd_ablate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, FileNotFoundError) as exc:
        print(f"ecgforge-clf: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
