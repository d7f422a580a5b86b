#ifndef NUBS_VERSION_HPP
#define NUBS_VERSION_HPP

#define NUBS_VERSION "0.1.0"

#endif
