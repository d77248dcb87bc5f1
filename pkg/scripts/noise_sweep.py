"""Accuracy of the default pipeline as salt-and-pepper colour noise grows."""
import argparse

from fingertrace.config import RunConfig
from fingertrace.errors import FingertraceError
from fingertrace.evaluate import default_match_radius, evaluate
from fingertrace.pipeline import detect
from fingertrace.synth import corpus_specs, generate_hand


def run(noise, count, seed, kernel):
    config = RunConfig(smooth_kernel=kernel)
    dets, truths = [], []
    for spec in corpus_specs(count, seed, noise=noise):
        image, truth = generate_hand(spec)
        try:
            dets.append(detect(image, config))
        except FingertraceError:
            dets.append(None)
        truths.append(truth)
    ok = [(d, t) for d, t in zip(dets, truths) if d is not None]
    report = evaluate([d for d, _ in ok], [t for _, t in ok], default_match_radius(640, 480))
    return report, len(dets) - len(ok)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=60)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--levels", type=float, nargs="+", default=[0.0, 0.005, 0.01, 0.02, 0.03, 0.05])
    ap.add_argument("--kernels", type=int, nargs="+", default=[3, 5])
    args = ap.parse_args()

    print("kernel  noise  count_acc  precision  recall  failed")
    for kernel in args.kernels:
        for noise in args.levels:
            r, failed = run(noise, args.count, args.seed, kernel)
            print(f"{kernel:6d}  {noise:5.3f}  {r.count_accuracy:9.3f}  {r.precision:9.3f}  {r.recall:6.3f}  {failed:6d}")


if __name__ == "__main__":
    main()
