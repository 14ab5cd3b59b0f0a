// Times the parallel certificate kernel against the serial reference on a
// growing family of instances. Both must produce identical certificates.

#include <chrono>
#include <cstdio>

#include "cofin/analysis.hpp"
#include "cofin/perm.hpp"

using namespace cofin;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

GroundAssignment make_ground(int generators) {
    GroundAssignment rho;
    rho.set("b", ExactPerm::block(2, {1, 0}));
    if (generators > 1)
        rho.set("c", ExactPerm::block(3, {1, 2, 0}));
    if (generators > 2)
        rho.set("z", ExactPerm({2, 0}, {2, -2}));
    return rho;
}

} // namespace

int main() {
    std::printf("%-10s %-6s %-8s %12s %12s %8s\n", "generators", "depth", "words", "serial[s]",
                "parallel[s]", "speedup");
    for (const int generators : {2, 3}) {
        const GroundAssignment rho = make_ground(generators);
        for (const std::uint64_t depth : {5ull, 7ull, 8ull}) {
            const auto t0 = std::chrono::steady_clock::now();
            const Certificate serial = cofinitary_certificate_serial(rho, depth);
            const double serial_s = seconds_since(t0);

            const auto t1 = std::chrono::steady_clock::now();
            const Certificate parallel = cofinitary_certificate(rho, depth);
            const double parallel_s = seconds_since(t1);

            if (!(serial == parallel)) {
                std::printf("MISMATCH at %d generators depth %llu\n", generators,
                            static_cast<unsigned long long>(depth));
                return 1;
            }
            std::printf("%-10d %-6llu %-8zu %12.4f %12.4f %7.2fx\n", generators,
                        static_cast<unsigned long long>(depth), serial.verdicts.size(),
                        serial_s, parallel_s, serial_s / parallel_s);
        }
    }
    return 0;
}
