"""Compare the compiled kernel extension against the pure-numpy fallback.

Runs each hot kernel at shapes typical of a training step, checks that both
backends agree numerically, then times a full optimizer step per backend.

Usage: python3 benchmarks/bench_kernels.py [--rows 640] [--repeats 50]
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from convir.tensor import kernels


def timed(fn, repeats: int) -> float:
    fn()  # warm-up
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_case(name, make_args, call, repeats):
    """Return (python_s, compiled_s, max_abs_diff) for one kernel."""
    rng = np.random.default_rng(0)
    args = make_args(rng)
    kernels.use_backend("python")
    ref = call(*args)
    t_py = timed(lambda: call(*args), repeats)
    kernels.use_backend("compiled")
    out = call(*args)
    t_c = timed(lambda: call(*args), repeats)
    diff = max(float(np.max(np.abs(np.asarray(a) - np.asarray(b))))
               for a, b in zip(np.atleast_1d(ref), np.atleast_1d(out)))
    return t_py, t_c, diff


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--rows", type=int, default=640,
                        help="token rows per batch (docs x tokens)")
    parser.add_argument("--d-model", type=int, default=128)
    parser.add_argument("--vocab", type=int, default=128)
    parser.add_argument("--repeats", type=int, default=50)
    args = parser.parse_args()

    if not kernels.has_compiled():
        print("compiled extension not built; nothing to compare")
        return 1

    n, d, v = args.rows, args.d_model, args.vocab
    f = lambda rng, *shape: rng.standard_normal(shape).astype(np.float64)

    def ce_args(rng):
        logits = f(rng, n, v)
        targets = rng.integers(0, v, size=n).astype(np.int64)
        mask = (rng.random(n) < 0.8).astype(np.uint8)
        return logits, targets, mask

    def ln_args(rng):
        x, gain, bias = f(rng, n, d), f(rng, d), f(rng, d)
        return x, gain, bias, 1e-5

    def adamw_args(rng):
        p, g = f(rng, d * 4 * d), f(rng, d * 4 * d)
        m, v_ = np.zeros_like(p), np.abs(f(rng, d * 4 * d))
        return p, g, m, v_, 1e-3, 0.9, 0.999, 1e-8, 0.01, 5

    cases = [
        ("gelu_fwd", lambda rng: (f(rng, n * 4 * d),), kernels.gelu_fwd),
        ("gelu_bwd", lambda rng: (f(rng, n * 4 * d), f(rng, n * 4 * d)),
         kernels.gelu_bwd),
        ("softmax_fwd", lambda rng: (f(rng, n, n),), kernels.softmax_fwd),
        ("softmax_bwd",
         lambda rng: (kernels.softmax_fwd(f(rng, n, n)), f(rng, n, n)),
         kernels.softmax_bwd),
        ("layernorm_fwd", ln_args, lambda *a: kernels.layernorm_fwd(*a)[0]),
        ("cross_entropy_fwd", ce_args,
         lambda *a: kernels.cross_entropy_fwd(*a)[0]),
        ("adamw_step", adamw_args,
         lambda *a: (kernels.adamw_step(*[x.copy() if isinstance(x, np.ndarray)
                                          else x for x in a]) or a[0])),
    ]

    print(f"{'kernel':<20} {'python':>10} {'compiled':>10} {'speedup':>8} {'max|diff|':>10}")
    worst = 0.0
    for name, make_args, call in cases:
        t_py, t_c, diff = bench_case(name, make_args, call, args.repeats)
        worst = max(worst, diff)
        print(f"{name:<20} {t_py * 1e3:9.3f}ms {t_c * 1e3:9.3f}ms "
              f"{t_py / t_c:7.2f}x {diff:10.2e}")

    print(f"\nfull training step ({args.repeats // 5 + 1} repeats):")
    step_times = {}
    for backend in ("python", "compiled"):
        kernels.use_backend(backend)
        step_times[backend] = timed(_training_step_fn(), args.repeats // 5 + 1)
        print(f"  {backend:<10} {step_times[backend] * 1e3:9.1f}ms")
    print(f"  speedup    {step_times['python'] / step_times['compiled']:8.2f}x")
    kernels.use_backend("compiled")

    if worst > 1e-8:
        print(f"backend mismatch: max diff {worst:.2e} exceeds 1e-8")
        return 1
    return 0


def _training_step_fn():
    from convir.model import Model, ModelConfig
    from convir.objective import FeatureQueue
    from convir.sequence import pack_document
    from convir.tensor.optim import AdamW
    from convir.train import TrainConfig, encode_images, stage1_documents, training_step
    from convir.world import ATTRIBUTE_NAMES, World, WorldSpec

    world = World(WorldSpec(seed=0))
    rng0 = np.random.default_rng(0)
    images = [world.make_image(i, {n: str(rng0.choice(world.values[n]))
                                   for n in ATTRIBUTE_NAMES})
              for i in range(100)]
    cfg = TrainConfig.stage1(batch_size=8, queue_size=256)
    model = Model(ModelConfig(vocab_size=world.vocab.size, d_model=64,
                              n_layers=2, n_heads=4, n_latents=8,
                              d_img=world.spec.d_img, d_phi=128, max_seq=256),
                  seed=0)
    queue = FeatureQueue(world.spec.d_img, cfg.queue_size)
    queue.prefill(np.random.default_rng(0))
    optimizer = AdamW(model.parameters(), weight_decay=cfg.weight_decay)
    features = encode_images(model, images)
    state = {"step": 0}

    def one_step():
        rng = np.random.default_rng(state["step"])
        docs = stage1_documents(world, images, rng, cfg.batch_size,
                                cfg.interleave_rate)
        batch = [pack_document(d, world.vocab, model.cfg.n_latents,
                               model.cfg.max_seq) for d in docs]
        training_step(model, optimizer, queue, batch, features, lr=1e-4)
        state["step"] += 1

    return one_step


if __name__ == "__main__":
    raise SystemExit(main())
