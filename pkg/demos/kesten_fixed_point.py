"""Two matrix Kesten recursions, one stationary law.

Both recursions are driven from the zero matrix and thinned after a
burn-in. Their stationary draws match each other and the direct
type II beta sampler.
"""

from posdefwalks import (
    ModelParams,
    SplitKind,
    kesten_samples,
    ks_two_sample,
    logdet,
    make_stream,
    sample_beta2,
    trace,
)

p = ModelParams(2, 2.5, 6.0)
rng = make_stream(101, 0)
opts = dict(burn_in=300, thin=25, n_samples=3000, n_chains=64)

plain = kesten_samples(p, SplitKind.CHOLESKY, rng=rng, prime=False, **opts)
primed = kesten_samples(p, SplitKind.CHOLESKY, rng=rng, prime=True, **opts)
# the stationary law keeps alpha and replaces beta by beta - alpha
direct = sample_beta2(ModelParams(p.dim, p.alpha, p.beta - p.alpha), rng, size=3000)

print(f"chain draws: {plain.shape[0]} per recursion, d={p.dim}")
for name, f in (("trace", trace), ("logdet", logdet)):
    d1, p1 = ks_two_sample(f(plain), f(direct))
    d2, p2 = ks_two_sample(f(primed), f(direct))
    d3, p3 = ks_two_sample(f(plain), f(primed))
    print(f"{name:>7s}:  plain vs direct p={p1:.3f}   primed vs direct p={p2:.3f}   plain vs primed p={p3:.3f}")
