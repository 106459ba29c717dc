"""Quick check of the extension module: build with `maturin develop` in crates/python."""

import tristream

edges = tristream.generate("independent:n=50")
g = tristream.Graph(edges)
assert g.edge_count == 150
assert g.triangle_count() == 50
stats = g.stats()
assert stats["vertex_moment"] == 150
assert g.motif_count("p3") == 150

params = tristream.EstimatorParams(50, stats["vertex_moment"], stats["edge_moment"], seed=1)
out = tristream.estimate(edges, params)
assert out["outcome"] == "estimate", out
assert abs(out["value"] - 50) <= 25, out

exact = tristream.estimate_once(edges, tristream.EstimatorParams(50, 150, 50, k=1))
assert exact["value"] == 50.0

high = tristream.estimate(edges, tristream.EstimatorParams(5000, 150, 50, seed=2))
assert high["outcome"] == "guess_too_high" and high["value"] is None

assert tristream.edge_sample(edges, 1.0) == (50.0, 150)
assert tristream.colorful(edges, 1)[0] == 50.0
assert tristream.vertex_sample(edges, 1.0)[0] == 50.0

m = tristream.motif_estimate(edges, "triangle", 50, g.motif_moments("triangle"), k=1, once=True)
assert m["value"] == 50.0

try:
    tristream.EstimatorParams(10, 10, 10, eps=0)
except ValueError:
    pass
else:
    raise AssertionError("eps=0 accepted")

print("smoke test ok:", params, out["value"])
