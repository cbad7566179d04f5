// Exact sign evaluation for the kernel predicates (GMP backed).
#pragma once

#include "rdel/kernel.hpp"

namespace rdel::exact {

int orientation(std::span<const Point> pts);
int lifted_orientation(std::span<const Point> pts);
int compare_distance(const Point& w, const Point& a, const Point& b);

} // namespace rdel::exact
