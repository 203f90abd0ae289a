#ifndef SEATARR_SEATARR_HPP
#define SEATARR_SEATARR_HPP

#include "seatarr/colorcoding.hpp"
#include "seatarr/efa.hpp"
#include "seatarr/errors.hpp"
#include "seatarr/esa.hpp"
#include "seatarr/generators.hpp"
#include "seatarr/io.hpp"
#include "seatarr/model.hpp"
#include "seatarr/mua.hpp"
#include "seatarr/mwa.hpp"
#include "seatarr/oracle.hpp"
#include "seatarr/rational.hpp"
#include "seatarr/solve.hpp"

namespace seatarr {

/// Problem-level dispatch honoring config.algorithm.
inline SolveOutcome solve(Problem problem, const Instance& inst, const SolverConfig& config = {}) {
    switch (problem) {
        case Problem::MWA: return mwa_solve(inst, config);
        case Problem::MUA: return mua_solve(inst, config);
        case Problem::EFA: return efa_solve(inst, config);
        case Problem::ESA: return esa_solve(inst, config);
    }
    throw std::invalid_argument("unknown problem");
}

}  // namespace seatarr

#endif
