#include <string>
#include <utility>
#include <vector>

#include "vmp/certify.hpp"
#include "vmp/errors.hpp"

namespace vmp {

namespace {

using Table = std::vector<std::pair<std::string, std::string>>;

// Variables (y, m).
const Table kK4P2 = {
    {"R_b", "(y+m)^2+y-3m"},
    {"R_a", "(3m^2+4y+11y^2+m^2y+5my^2+3y^3) - (2my+m^3)"},
    {"f1", "(m+y)(y^3+my^2+3y^2-m^2y-3my+2y-m^3+2m^2)"},
    {"f2", "y^5+3my^4+5y^4+2m^2y^3+5my^3+2y^3-2m^3y^2-3m^2y^2-3m^4y-m^3y+6m^2y-m^5+2m^4"},
    {"d1",
     "6m^3-m^4-3m^5+12my+4m^2y-13m^3y-7m^4y+20y^2+14my^2+7m^2y^2+2m^3y^2+48y^3+49my^3+18m^2y^3+30y^4+17my^4+5y^5"},
    {"d2", "6m^2-m^3-3m^4-6m^2y-4m^3y+6y^2+15my^2+6m^2y^2+20y^3+12my^3+5y^4"},
    {"g1", "12m+4m^2-13m^3-7m^4+40y+28my+14m^2y+4m^3y+144y^2+147my^2+54m^2y^2+120y^3+68my^3+25y^4"},
    {"g2",
     "12m^2+4m^3-13m^4-7m^5-18m^2y-13m^3y-3m^4y+60y^2+180my^2+183m^2y^2+58m^3y^2+298y^3+353my^3+122m^2y^3+170y^4+"
     "93my^4+25y^5"},
    {"h1",
     "24m+60m^2+6m^3-13m^4-3m^5+240y+300my+460m^2y+347m^3y+113m^4y+1520y^2+2246my^2+1663m^2y^2+482m^3y^2+2112y^3+"
     "2233my^3+738m^2y^3+930y^4+497my^4+125y^5"},
    {"h2", "-18m^2-13m^3-3m^4+120y+360my+366m^2y+116m^3y+894y^2+1059my^2+366m^2y^2+680y^3+372my^3+125y^4"},
    {"H0", "12m(2+5m+2m^2)"},
    {"l1",
     "240+300m+460m^2+347m^3+113m^4+3040y+4492my+3326m^2y+964m^3y+6336y^2+6699my^2+2214m^2y^2+3720y^3+1988my^3+"
     "625y^4"},
    {"l2",
     "84m^2+316m^3+347m^4+113m^5+720y+2520my+5046m^2y+3899m^3y+1077m^4y+9180y^2+15780my^2+11727m^2y^2+3178m^3y^2+"
     "12202y^3+13145my^3+4202m^2y^3+4970y^4+2613my^4+625y^5"},
    {"L",
     "4(14400m^2+36000m^3+75936m^4+97368m^5+78972m^6+37188m^7+8136m^8+57600y+172800my+717360m^2y+1373400m^3y+"
     "1732428m^4y+1360314m^5y+599454m^6y+111444m^7y+1344000y^2+3838560my^2+8437260m^2y^2+11062920m^3y^2+"
     "8495031m^4y^2+3499083m^5y^2+595986m^6y^2+9342880y^3+24217360my^3+32546720m^2y^3+24561680m^3y^3+"
     "9950080m^4y^3+1694280m^5y^3+17918380y^4+37038224my^4+34271234m^2y^4+15627870m^3y^4+2862630m^4y^4+"
     "15343236y^5+23700982my^5+13930330m^2y^5+2982516m^3y^5+6445963y^6+6618363my^6+1887294m^2y^6+1302640y^7+"
     "667056my^7+101250y^8)"},
};

// Variables (y, m).
const Table kK8P2 = {
    {"R_b", "(y+m)^2+y-7m"},
    {"R_a", "7m^2-m^3+24y-2my+5m^2y+55y^2+13my^2+7y^3"},
    {"Lp0", "192m^2(m-4)(1+2m)(480+64m+90m^2+33m^3)"},
};

// Variables (y, m, k).
const Table kGenericK = {
    {"R_b", "y+(y+m)^2-(k-1)m"},
    {"2R_a",
     "-2m^2+2km^2-2m^3-2ky+k^2y-4my-6m^2y+2km^2y-2y^2-2ky^2+2k^2y^2-6my^2+4kmy^2-2y^3+2ky^3"},
    {"f1",
     "-16km^4+8k^2m^4+32m^5-16km^5-20k^2m^2y+8k^3m^2y+8km^3y-4k^2m^3y+160m^4y-96km^4y+8k^2m^4y-4k^3y^2+k^4y^2+"
     "120km^2y^2-84k^2m^2y^2+12k^3m^2y^2+320m^3y^2-224km^3y^2+32k^2m^3y^2+20k^2y^3-20k^3y^3+4k^4y^3+152kmy^3-"
     "124k^2my^3+24k^3my^3+320m^2y^3-256km^2y^3+48k^2m^2y^3+56ky^4-52k^2y^4+12k^3y^4+160my^4-144kmy^4+32k^2my^4+"
     "32y^5-32ky^5+8k^2y^5"},
    {"f2",
     "4(-4km^3+2k^2m^3+8m^4-4km^4-3k^2my+k^3my+2km^2y-k^2m^2y+32m^3y-20km^3y+2k^2m^3y+k^2y^2+16kmy^2-12k^2my^2+"
     "2k^3my^2+48m^2y^2-36km^2y^2+6k^2m^2y^2+10ky^3-9k^2y^3+2k^3y^3+32my^3-28kmy^3+6k^2my^3+8y^4-8ky^4+2k^2y^4)"},
    {"factor", "24k^3m(1+2m)(km-6m-k)"},
};

// Variables (y, m, p); evaluated at p = 3.
const Table kP3K4 = {
    {"R_b", "p(p(y+m)^2+y(5p-8)-3pm)"},
    {"R_a", "p^2(3m^2p-m^3p+y(-8+8m+8p-6mp+m^2p)+y^2(-24+23p+5mp)+3py^3)"},
    {"l1",
     "3(5120+2880m+13800m^2+11034m^3+3051m^4+169600y+199632my+116820m^2y+26028m^3y+298296y^2+239706my^2+"
     "59778m^2y^2+133920y^3+53676my^3+16875y^4)"},
    {"l2",
     "27(-2048m+192m^2+3448m^3+3678m^4+1017m^5+25600y+49920my+76152m^2y+45330m^3y+9693m^4y+200000y^2+250152my^2+"
     "139266m^2y^2+28602m^3y^2+195880y^3+157254my^3+37818m^2y^3+59640y^4+23517my^4+5625y^5)"},
};

}  // namespace

std::vector<std::pair<std::string, std::string>> printed_polynomials(const std::string& chain) {
    if (chain == "k4p2") return kK4P2;
    if (chain == "k8p2") return kK8P2;
    if (chain == "generic_k") return kGenericK;
    if (chain == "p3k4") return kP3K4;
    throw DomainError("unknown chain '" + chain + "'");
}

}  // namespace vmp
