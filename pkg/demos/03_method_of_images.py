#!/usr/bin/env python3
"""Method of images: periodic kernel, and the box kernel as its odd part.

Summing free kernels over sources shifted by 2kN*mu0 yields a kernel
periodic in both arguments; subtracting the mirror family

    k_Box(j, r) = k_P(j, r) - k_P(j, -r)

reproduces the spectral box propagator.  Orders beyond the Bessel
truncation window contribute below double precision, which fixes the
number of images needed.
"""

from polymerqm import (
    PhysicalParams,
    box_images_kernel,
    box_spectral_kernel,
    free_kernel,
    minimal_image_cutoff,
    periodic_kernel,
)

params = PhysicalParams()
N = 5
z = 2.0

print(f"=== periodic kernel, N = {N}, z = {z} ===")
base = periodic_kernel(2, 1, z, N, params=params)
shifted = periodic_kernel(2 + 2 * N, 1, z, N, params=params)
print(f"k_P(2, 1)        = {base:.12f}")
print(f"k_P(2+2N, 1)     = {shifted:.12f}")
print(f"|difference|     = {abs(base - shifted):.2e}")
cutoff = minimal_image_cutoff(N, z, 2, 1)
brute = sum(free_kernel(2, 1 + 2 * k * N, z, params) for k in range(-cutoff, cutoff + 1))
print(f"vs explicit image sum ({2 * cutoff + 1} images): {abs(base - brute):.2e}")

print()
print("=== box kernel: spectral sum vs image sum ===")
print("   j    r   |spectral - images|")
worst = 0.0
for j in range(0, N + 1):
    for r in range(0, N + 1):
        dev = abs(box_spectral_kernel(j, r, z, N, params)
                  - box_images_kernel(j, r, z, N, params=params))
        worst = max(worst, dev)
for j, r in ((0, 3), (1, 1), (2, 4), (5, 2)):
    dev = abs(box_spectral_kernel(j, r, z, N, params)
              - box_images_kernel(j, r, z, N, params=params))
    print(f"{j:4d} {r:4d}   {dev:.2e}")
print(f"worst over all pairs: {worst:.2e}")

print()
print("=== image count grows with z, shrinks with N ===")
for n_box in (2, 4, 16):
    for zz in (0.5, 10.0, 100.0):
        print(f"N={n_box:3d} z={zz:6.1f}: K_min = "
              f"{minimal_image_cutoff(n_box, zz, n_box, n_box)}")
