// Benchmark: OpenMP census kernel vs the serial per-pair reference.
#include <chrono>
#include <cstdio>

#include "qinv/classify.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

using namespace qinv;

namespace {

template <typename F>
double time_ms(F&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void run_case(const char* name, const FieldCtx& f, unsigned d, unsigned e) {
    CensusResult serial, par1, parN;
    const double t_serial = time_ms([&] { serial = intersection_census_serial(f, d, e); });
    const double t_par1 = time_ms([&] { par1 = intersection_census(f, d, e, 1); });
#if defined(_OPENMP)
    const int threads = omp_get_max_threads();
#else
    const int threads = 1;
#endif
    const double t_parN = time_ms([&] { parN = intersection_census(f, d, e, threads); });

    const bool agree = serial.tally == par1.tally && par1.tally == parN.tally &&
                       serial.subfield_pairs == parN.subfield_pairs;
    std::printf("%-28s serial %9.1f ms | kernel x1 %8.1f ms | kernel x%-2d %8.1f ms | "
                "speedup %5.1f | agree %s\n",
                name, t_serial, t_par1, threads, t_parN,
                t_par1 > 0 ? t_par1 / t_parN : 0.0, agree ? "yes" : "NO");
}

}  // namespace

int main() {
    std::printf("census benchmark: ordered pairs of d-dim F_q-subspaces of F_{q^e}\n\n");
    {
        FieldCtx f = FieldCtx::make(3, 4, 1);
        run_case("F_{3^4}, d=3, e=4", f, 3, 4);
        run_case("F_{3^4}, d=2, e=4", f, 2, 4);
    }
    {
        FieldCtx f = FieldCtx::make(5, 4, 1);
        run_case("F_{5^4}, d=3, e=4", f, 3, 4);
    }
    {
        FieldCtx f = FieldCtx::make(2, 6, 1);
        run_case("F_{2^6}, d=3, e=6", f, 3, 6);
    }
    {
        FieldCtx f = FieldCtx::make(2, 8, 2);
        run_case("F_{4^4}, d=3, e=4 (q=4)", f, 3, 4);
    }
    return 0;
}
