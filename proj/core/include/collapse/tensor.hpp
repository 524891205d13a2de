#pragma once

#include <Eigen/Core>
#include <utility>

namespace collapse {

// Gradients are stored G(i, j) = d_j u^i.
template <int N>
using SquareMat = Eigen::Matrix<double, N, N>;

template <int N>
SquareMat<N> deformation(const SquareMat<N>& G) {
    return 0.5 * (G + G.transpose());
}

template <int N>
SquareMat<N> stress(const SquareMat<N>& G, double mu, double eta) {
    const double div = G.trace();
    return mu * (2.0 * deformation<N>(G) - (2.0 / N) * div * SquareMat<N>::Identity()) +
           eta * div * SquareMat<N>::Identity();
}

// A:B = sum A^i_j B^j_i
template <int N>
double contract(const SquareMat<N>& A, const SquareMat<N>& B) {
    return (A.array() * B.transpose().array()).sum();
}

// (S(G):G, 2 mu |D - div/N Id|^2 + eta div^2)
template <int N>
std::pair<double, double> contraction_identity(const SquareMat<N>& G, double mu, double eta) {
    const double div = G.trace();
    const SquareMat<N> dev = deformation<N>(G) - (div / N) * SquareMat<N>::Identity();
    return {contract<N>(stress<N>(G, mu, eta), G), 2.0 * mu * dev.squaredNorm() + eta * div * div};
}

// bulk coefficient of the limit momentum equation: eta + (N-2) mu / N
inline double effective_bulk(double mu, double eta, int N) {
    return eta + (N - 2.0) * mu / N;
}

}  // namespace collapse
