#ifndef ZONOKIT_TESTS_HELPERS_HPP
#define ZONOKIT_TESTS_HELPERS_HPP

#include <initializer_list>

#include "zonokit/set.hpp"

namespace testutil {

inline zonokit::Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
    const auto r = static_cast<Eigen::Index>(rows.size());
    const auto c = r == 0 ? 0 : static_cast<Eigen::Index>(rows.begin()->size());
    zonokit::Matrix m(r, c);
    Eigen::Index i = 0;
    for (const auto& row : rows) {
        Eigen::Index j = 0;
        for (double x : row) m(i, j++) = x;
        ++i;
    }
    return m;
}

inline zonokit::Vector vec(std::initializer_list<double> xs) {
    zonokit::Vector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

inline zonokit::BinaryVector bvec(std::initializer_list<int> xs) {
    zonokit::BinaryVector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (int x : xs) v[i++] = x;
    return v;
}

} // namespace testutil

#endif
