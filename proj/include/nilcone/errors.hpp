#pragma once

#include <stdexcept>
#include <string>

namespace nilcone {

// Every failure mode gets its own type so tests and the CLI can tell
// a math precondition violation from a bad input file.
#define NILCONE_ERROR(Name)                                        \
    struct Name : std::runtime_error {                             \
        explicit Name(const std::string& msg = #Name)              \
            : std::runtime_error(std::string(#Name) + ": " + msg) {} \
    }

NILCONE_ERROR(NotUnipotent);
NILCONE_ERROR(NotNilpotent);
NILCONE_ERROR(NotQuasiUnipotent);
NILCONE_ERROR(DimensionMismatch);
NILCONE_ERROR(Singular);
NILCONE_ERROR(RationalSpectrum);
NILCONE_ERROR(NotTwoByTwo);
NILCONE_ERROR(MixedRadicand);
NILCONE_ERROR(WrongCenter);
NILCONE_ERROR(NotProportional);
NILCONE_ERROR(UnknownGenerator);
NILCONE_ERROR(NotComposable);
NILCONE_ERROR(NotInQuotientLattice);
NILCONE_ERROR(DepthMismatch);
NILCONE_ERROR(TruncationTooSmall);
NILCONE_ERROR(IdentityFails);
NILCONE_ERROR(NotAQuadraticShiftInA);
NILCONE_ERROR(WrongHolonomicRank);
NILCONE_ERROR(SingularityTooClose);
NILCONE_ERROR(PrecisionExhausted);
NILCONE_ERROR(ParseError);
NILCONE_ERROR(SchemaError);
NILCONE_ERROR(DimensionError);
NILCONE_ERROR(UnknownCase);
NILCONE_ERROR(UnknownSuite);
NILCONE_ERROR(IoError);

#undef NILCONE_ERROR

} // namespace nilcone
