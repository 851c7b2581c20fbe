#pragma once

// Built-in finite-type product systems.
//
//   affine-toeplitz     nat-mult, Toeplitz coefficients, X_s = T with
//                       alpha_s(S) = S^s; basis u_j = S^j, N_s = s
//   additive-toeplitz   nat-mult, C(T), alpha_p(z) = z^p; basis z^j, N_p = p
//   lattice-dilation    nat-mult, C(T^d); style "diagonal" dilates every axis
//                       (N_p = p^d), style "first-axis" only axis 0 (N_p = p)
//   cuntz               nat-add, scalar coefficients, N_n = k^n
//
// Index maps concatenate digits: m_{s,r}(j, k) = j + N_s k on each dilated axis.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ntkms/product_system.hpp"

namespace ntkms {

struct SystemSpec {
  std::string name = "affine-toeplitz";
  int k = 2;                         // cuntz
  int d = 1;                         // lattice-dilation
  std::string style = "diagonal";    // lattice-dilation

  bool operator==(const SystemSpec&) const = default;
};

SystemPtr make_system(const SystemSpec& spec);

SystemPtr make_affine_toeplitz();
SystemPtr make_additive_toeplitz();
SystemPtr make_lattice_dilation(int d, const std::string& style);
SystemPtr make_cuntz(int k);

// Wraps base and exchanges the values m_{s,r}(i1) and m_{s,r}(i2), where i1, i2
// are positions in the (j, k) grid read as j + N_s k. Used as a fault fixture.
SystemPtr make_corrupted(SystemPtr base, SemigroupElement s, SemigroupElement r,
                         std::uint64_t i1, std::uint64_t i2);

struct BuiltinInfo {
  std::string name;
  std::string semigroup;
  std::string engine;
  std::string parameters;
  std::string description;
};
std::vector<BuiltinInfo> builtin_systems();

// Toeplitz transfer L_r(S^a S*^b) = S^ceil(a/r) S*^ceil(b/r) when a = b mod r.
std::optional<Monomial> toeplitz_transfer(std::uint64_t r, const Monomial& x);

}  // namespace ntkms
