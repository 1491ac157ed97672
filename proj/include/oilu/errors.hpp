#pragma once

#include <stdexcept>
#include <string>

namespace oilu {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// --- codec ---
class InvalidDigit : public Error {
public:
    using Error::Error;
};
class InvalidPattern : public Error {
public:
    using Error::Error;
};

// --- render ---
class LayoutOverflow : public Error {
public:
    using Error::Error;
};
class InvalidRing : public Error {
public:
    using Error::Error;
};

// --- raster / file I/O ---
class UnsupportedFormat : public Error {
public:
    using Error::Error;
};
// Corrupt or truncated image data (the file was readable but not parseable).
class FormatError : public Error {
public:
    using Error::Error;
};
// Filesystem-level failure (missing file, permission, short write).
class IoError : public Error {
public:
    using Error::Error;
};

// --- vision ---
class DegenerateHistogram : public Error {
public:
    using Error::Error;
};
class NoMarkerFound : public Error {
public:
    using Error::Error;
};
class DegenerateQuad : public Error {
public:
    using Error::Error;
};
class OutOfDomain : public Error {
public:
    using Error::Error;
};

// --- levelset ---
class NoRingsFound : public Error {
public:
    using Error::Error;
};
class AmbiguousBands : public Error {
public:
    using Error::Error;
};
class UndecodableRing : public Error {
public:
    UndecodableRing(int ring, const std::string& what) : Error(what), ring_(ring) {}
    int ring() const { return ring_; }

private:
    int ring_;
};

// --- harness ---
class NoData : public Error {
public:
    using Error::Error;
};

}  // namespace oilu
