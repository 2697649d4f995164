#!/usr/bin/env python3
"""Regenerates data/wikievalfacts.jsonl, the bundled evaluation dataset.

The file follows the canonical faaf dataset schema: a header line followed by
one QA record per line. Shape invariants enforced below: 50 QA pairs, 281
facts, 843 annotations; ground-truth labels all True; 86 ungrounded-True and
24 poor-True labels (factual accuracies 100 / 30.6 / 8.5 percent).

The generator is deterministic; running it twice produces identical bytes.
Real exports in the same schema can be swapped in via scripts/import_wikieval.py.
"""

import json
import os
import sys

# (id, subject, question, facts, ungrounded_true_count, poor_true_count, tangent)
# Ungrounded answers support the LAST u facts, poor answers the FIRST p.
TOPICS = [
    ("aral-sea", "The Aral Sea", "Why did the Aral Sea shrink?", [
        "The Aral Sea began shrinking in the 1960s after Soviet irrigation projects diverted its feeder rivers.",
        "The Amu Darya and Syr Darya rivers were redirected to irrigate cotton fields.",
        "By 1997 the Aral Sea had declined to about ten percent of its original size.",
        "The shrinking of the Aral Sea destroyed the local fishing industry.",
        "The exposed seabed of the Aral Sea became a source of toxic dust storms.",
        "The Kok-Aral Dam, completed in 2005, partially restored the northern part of the Aral Sea.",
    ], 2, 1, "The Aral Sea region has attracted documentary filmmakers from around the world."),
    ("voyager-1", "Voyager 1", "What is the Voyager 1 spacecraft known for?", [
        "Voyager 1 was launched by NASA in September 1977.",
        "Voyager 1 performed flybys of Jupiter and Saturn.",
        "Voyager 1 entered interstellar space in August 2012.",
        "Voyager 1 carries a golden record with sounds and images of Earth.",
        "Voyager 1 is the most distant human-made object from Earth.",
    ], 2, 1, "Voyager 1 has inspired several popular science fiction stories."),
    ("penicillin", "Penicillin", "How was penicillin discovered?", [
        "Alexander Fleming discovered penicillin in 1928 at St Mary's Hospital in London.",
        "Fleming noticed that a Penicillium mould killed bacteria in a contaminated culture plate.",
        "Howard Florey and Ernst Chain later developed penicillin into a usable drug.",
        "Penicillin became widely available during the Second World War.",
    ], 1, 0, "Penicillin is sometimes described as the single most famous accident in science."),
    ("great-barrier-reef", "The Great Barrier Reef", "What threatens the Great Barrier Reef?", [
        "The Great Barrier Reef is the world's largest coral reef system.",
        "Rising sea temperatures cause mass coral bleaching events on the Great Barrier Reef.",
        "The Great Barrier Reef suffered severe bleaching events in 2016 and 2017.",
        "Crown-of-thorns starfish outbreaks damage coral on the Great Barrier Reef.",
        "Agricultural runoff degrades water quality around the Great Barrier Reef.",
        "The Great Barrier Reef stretches over two thousand three hundred kilometres.",
        "Cyclones cause physical destruction of reef structures on the Great Barrier Reef.",
    ], 2, 1, "The Great Barrier Reef is a favourite destination of recreational divers."),
    ("hagia-sophia", "The Hagia Sophia", "What is the history of the Hagia Sophia?", [
        "The Hagia Sophia was built as a cathedral in Constantinople under Emperor Justinian I.",
        "The Hagia Sophia was completed in the year 537.",
        "The Hagia Sophia was converted into a mosque after the Ottoman conquest of 1453.",
        "The Hagia Sophia served as a museum from 1935 to 2020.",
        "The dome of the Hagia Sophia was the largest in the world for centuries.",
    ], 1, 0, "The Hagia Sophia appears on countless postcards of Istanbul."),
    ("monarch-butterflies", "Monarch butterflies", "How do monarch butterflies migrate?", [
        "Monarch butterflies migrate up to four thousand eight hundred kilometres between Canada and central Mexico.",
        "Monarch butterflies overwinter in oyamel fir forests in Mexico.",
        "The monarch migration spans multiple generations of butterflies.",
        "Monarch butterflies navigate using a sun compass calibrated by their internal clock.",
        "Monarch butterfly populations have declined sharply since the 1990s.",
        "Milkweed is the only plant on which monarch butterflies lay their eggs.",
    ], 2, 1, "Monarch butterflies are a common subject of school science projects."),
    ("panama-canal", "The Panama Canal", "How does the Panama Canal work?", [
        "The Panama Canal connects the Atlantic and Pacific Oceans across the Isthmus of Panama.",
        "The Panama Canal uses a system of locks to raise ships to Gatun Lake.",
        "Gatun Lake lies about twenty-six metres above sea level.",
        "The Panama Canal opened to traffic in 1914.",
        "The United States controlled the Panama Canal until the end of 1999.",
        "A typical transit of the Panama Canal takes eight to ten hours.",
        "An expansion of the Panama Canal with larger locks opened in 2016.",
        "Water from Gatun Lake fills and empties the canal locks by gravity.",
    ], 3, 0, "Cruise passengers often list the Panama Canal among their favourite crossings."),
    ("rosetta-stone", "The Rosetta Stone", "Why is the Rosetta Stone important?", [
        "The Rosetta Stone carries the same decree in hieroglyphic, Demotic and Greek scripts.",
        "The Rosetta Stone was found by French soldiers in Egypt in 1799.",
        "Jean-Francois Champollion used the Rosetta Stone to decipher Egyptian hieroglyphs in 1822.",
        "The Rosetta Stone has been displayed in the British Museum since 1802.",
        "The decree on the Rosetta Stone was issued on behalf of King Ptolemy V.",
    ], 2, 1, "The Rosetta Stone has lent its name to language-learning software."),
    ("haber-process", "The Haber process", "What is the Haber process used for?", [
        "The Haber process synthesizes ammonia from nitrogen and hydrogen.",
        "Fritz Haber demonstrated the ammonia synthesis process in 1909.",
        "The Haber process made the mass production of synthetic fertilizers possible.",
        "Ammonia production by the Haber process consumes about one percent of the world's energy supply.",
    ], 1, 0, "The Haber process is a staple example in chemistry textbooks."),
    ("mariana-trench", "The Mariana Trench", "How deep is the Mariana Trench?", [
        "The Mariana Trench is the deepest part of the world's oceans.",
        "The Challenger Deep in the Mariana Trench reaches a depth of about ten thousand nine hundred metres.",
        "The Mariana Trench lies in the western Pacific Ocean east of the Mariana Islands.",
        "Jacques Piccard and Don Walsh first reached the bottom of the Challenger Deep in 1960.",
        "The film director James Cameron made a solo descent to the Challenger Deep in 2012.",
        "Pressure at the bottom of the Mariana Trench exceeds one thousand times sea-level atmospheric pressure.",
    ], 2, 1, "The Mariana Trench features in many adventure novels."),
    ("printing-press", "The printing press", "How did the printing press change Europe?", [
        "Johannes Gutenberg introduced movable-type printing to Europe around 1440.",
        "The Gutenberg Bible was printed in Mainz in the 1450s.",
        "Printing sharply reduced the cost of producing books in Europe.",
        "The spread of printing accelerated the circulation of ideas during the Reformation.",
        "By 1500 printing presses operated in more than two hundred European cities.",
    ], 1, 0, "Printing museums remain popular attractions across Europe."),
    ("yellowstone", "Yellowstone National Park", "What makes Yellowstone National Park geologically active?", [
        "Yellowstone National Park sits above a volcanic hotspot.",
        "Yellowstone was established in 1872 as the first national park in the United States.",
        "Yellowstone contains about half of the world's active geysers.",
        "The Old Faithful geyser erupts at intervals of roughly sixty to ninety minutes.",
        "The Yellowstone caldera formed in a massive eruption about six hundred forty thousand years ago.",
        "Magma beneath Yellowstone heats the park's hot springs and mud pots.",
        "The Grand Prismatic Spring is the largest hot spring in the United States.",
    ], 2, 1, "Yellowstone's wildlife draws millions of visitors every year."),
    ("suez-canal", "The Suez Canal", "When was the Suez Canal built?", [
        "The Suez Canal opened to shipping in 1869.",
        "The Suez Canal connects the Mediterranean Sea with the Red Sea.",
        "Ferdinand de Lesseps organized the construction of the Suez Canal.",
        "The Suez Canal allows ships to avoid the long route around Africa.",
    ], 1, 0, "The Suez Canal occasionally makes headlines when ships run aground."),
    ("honeybee-dance", "Honeybees", "How do honeybees communicate the location of food?", [
        "Honeybees communicate the direction and distance of food sources through a waggle dance.",
        "The angle of the waggle dance relative to vertical encodes the direction of food relative to the sun.",
        "The duration of the waggle phase encodes the distance to the food source.",
        "Karl von Frisch decoded the honeybee waggle dance.",
        "Karl von Frisch received a Nobel Prize in 1973 for his work on bee communication.",
        "Honeybees perform the waggle dance on the vertical comb inside the hive.",
    ], 2, 1, "Honeybees appear in folklore from many cultures."),
    ("transistor", "The transistor", "Who invented the transistor?", [
        "The first transistor was demonstrated at Bell Labs in December 1947.",
        "John Bardeen, Walter Brattain and William Shockley invented the transistor.",
        "The inventors of the transistor received the Nobel Prize in Physics in 1956.",
        "Transistors replaced vacuum tubes in electronic circuits.",
        "The transistor is considered a foundation of modern electronics.",
    ], 2, 0, "Early transistor radios are now sought-after collector items."),
    ("silk-road", "The Silk Road", "What was the Silk Road?", [
        "The Silk Road was a network of trade routes connecting China with the Mediterranean world.",
        "Silk, spices, precious metals and glassware moved along the Silk Road.",
        "The Silk Road flourished under the Han dynasty from around the second century BCE.",
        "Buddhism spread from India into China along the Silk Road.",
        "The city of Samarkand prospered as a major Silk Road trading hub.",
        "The Silk Road also carried diseases, including the plague.",
        "Overland Silk Road trade declined as maritime routes expanded in the fifteenth century.",
        "The German geographer Ferdinand von Richthofen coined the term Silk Road in the nineteenth century.",
    ], 4, 2, "Travel writers retrace the Silk Road to this day."),
    ("deep-blue", "Deep Blue", "How did a computer first defeat a world chess champion?", [
        "The IBM computer Deep Blue defeated world chess champion Garry Kasparov in 1997.",
        "The 1997 match between Deep Blue and Kasparov ended three and a half to two and a half.",
        "Deep Blue could evaluate about two hundred million chess positions per second.",
        "Kasparov had won an earlier match against Deep Blue in 1996.",
        "Deep Blue combined custom chess chips with opening and endgame databases.",
        "IBM retired Deep Blue after the 1997 match.",
    ], 2, 1, "Chess commentators still debate individual moves from the 1997 match."),
    ("amazon-river", "The Amazon River", "Which river carries the most water?", [
        "The Amazon River discharges more water than any other river on Earth.",
        "The Amazon River basin drains about forty percent of South America.",
        "The Amazon River's discharge exceeds that of the next seven largest rivers combined.",
        "The Amazon River has no bridges across its main stem.",
    ], 1, 0, "River cruises on the Amazon are a growing tourist industry."),
    ("antibiotic-resistance", "Antibiotic resistance", "Why does antibiotic resistance develop?", [
        "Antibiotic resistance develops through natural selection of bacteria that survive antibiotic exposure.",
        "Overuse of antibiotics in medicine and farming accelerates antibiotic resistance.",
        "Resistant genes can transfer between bacteria on mobile DNA elements called plasmids.",
        "Methicillin-resistant Staphylococcus aureus is a widely known resistant pathogen.",
        "Incomplete antibiotic courses can leave partially resistant bacteria alive.",
    ], 2, 1, "Antibiotic resistance is a frequent topic of public health campaigns."),
    ("apollo-11", "Apollo 11", "How did humans first land on the Moon?", [
        "Apollo 11 landed the first humans on the Moon on July 20, 1969.",
        "Neil Armstrong and Buzz Aldrin walked on the lunar surface while Michael Collins orbited above.",
        "The lunar module Eagle touched down in the Sea of Tranquility.",
        "Armstrong and Aldrin spent about two and a half hours walking on the Moon.",
        "Apollo 11 returned about twenty-one kilograms of lunar samples to Earth.",
        "The Saturn V rocket launched Apollo 11 from Kennedy Space Center.",
        "The Apollo 11 crew splashed down in the Pacific Ocean on July 24, 1969.",
    ], 2, 0, "Apollo 11 memorabilia commands high prices at auctions."),
    ("great-wall", "The Great Wall of China", "Why was the Great Wall of China built?", [
        "The Great Wall of China was built to protect Chinese states against raids from northern nomadic groups.",
        "Most of the existing Great Wall was built during the Ming dynasty.",
        "The Great Wall system stretches for thousands of kilometres across northern China.",
        "Watchtowers along the Great Wall were used for signalling with smoke and fire.",
        "Construction of early walls that became the Great Wall began in the seventh century BCE.",
        "The Great Wall was designated a UNESCO World Heritage Site in 1987.",
    ], 1, 1, "The Great Wall is among the most photographed structures in the world."),
    ("dna-structure", "DNA", "Who determined the structure of DNA?", [
        "James Watson and Francis Crick proposed the double-helix structure of DNA in 1953.",
        "Rosalind Franklin's X-ray diffraction images were crucial to determining DNA's structure.",
        "The DNA double helix consists of two strands linked by complementary base pairs.",
        "Watson, Crick and Maurice Wilkins shared the 1962 Nobel Prize for the discovery.",
        "The base pairing rules of DNA explain how genetic information is copied.",
    ], 2, 0, "The double helix has become a universal symbol of biology."),
    ("eiffel-tower", "The Eiffel Tower", "Why was the Eiffel Tower constructed?", [
        "The Eiffel Tower was built as the entrance arch for the 1889 World's Fair in Paris.",
        "Gustave Eiffel's engineering company designed and built the Eiffel Tower.",
        "The Eiffel Tower was the tallest structure in the world until 1930.",
        "The Eiffel Tower was originally intended to stand for only twenty years.",
    ], 1, 1, "The Eiffel Tower sparkles with lights every evening."),
    ("photosynthesis", "Photosynthesis", "How does photosynthesis work?", [
        "Photosynthesis converts carbon dioxide and water into glucose using light energy.",
        "Photosynthesis in plants takes place in organelles called chloroplasts.",
        "Chlorophyll absorbs mainly red and blue light while reflecting green.",
        "The light-dependent reactions of photosynthesis produce ATP and NADPH.",
        "The Calvin cycle fixes carbon dioxide into sugars.",
        "Photosynthesis releases oxygen as a by-product from the splitting of water.",
        "Nearly all atmospheric oxygen on Earth originates from photosynthesis.",
        "C4 plants such as maize concentrate carbon dioxide to reduce photorespiration.",
    ], 3, 0, "Photosynthesis experiments are a staple of school biology lessons."),
    ("krakatoa", "Krakatoa", "What happened when Krakatoa erupted in 1883?", [
        "The volcano Krakatoa erupted catastrophically in August 1883.",
        "The 1883 Krakatoa eruption generated tsunamis that killed more than thirty-six thousand people.",
        "The sound of the Krakatoa eruption was heard thousands of kilometres away.",
        "Ash from Krakatoa lowered global temperatures in the following years.",
        "The eruption destroyed most of the island of Krakatoa.",
    ], 2, 1, "Krakatoa has been the subject of books and disaster films."),
    ("alhambra", "The Alhambra", "What is the Alhambra?", [
        "The Alhambra is a palace and fortress complex in Granada, Spain.",
        "The Alhambra was built mainly by the Nasrid dynasty in the thirteenth and fourteenth centuries.",
        "The name Alhambra derives from the Arabic for red castle.",
        "The Court of the Lions is one of the most famous spaces in the Alhambra.",
        "The Alhambra became a UNESCO World Heritage Site in 1984.",
        "Washington Irving wrote Tales of the Alhambra after living in the palace.",
    ], 1, 0, "Tickets to the Alhambra often sell out weeks in advance."),
    ("gulf-stream", "The Gulf Stream", "How does the Gulf Stream affect climate?", [
        "The Gulf Stream is a warm Atlantic current flowing from the Gulf of Mexico toward Europe.",
        "The Gulf Stream moderates winter temperatures in north-western Europe.",
        "The Gulf Stream transports warm water at rates far exceeding all rivers combined.",
        "Benjamin Franklin published an early chart of the Gulf Stream.",
        "The Gulf Stream is part of the Atlantic meridional overturning circulation.",
        "Weakening of the Atlantic overturning circulation could disrupt European climate.",
        "The Gulf Stream influences the paths of Atlantic hurricanes.",
    ], 2, 1, "Sailors have used the Gulf Stream to speed Atlantic crossings for centuries."),
    ("stonehenge", "Stonehenge", "When was Stonehenge erected?", [
        "The main stone circle at Stonehenge was erected around 2500 BCE.",
        "Stonehenge stands on Salisbury Plain in southern England.",
        "The largest stones at Stonehenge, called sarsens, weigh around twenty-five tonnes.",
        "The smaller bluestones of Stonehenge were transported from Wales.",
    ], 1, 0, "Crowds gather at Stonehenge for the summer solstice."),
    ("vaccination-smallpox", "Smallpox", "How was smallpox eradicated?", [
        "Smallpox was declared eradicated by the World Health Organization in 1980.",
        "Edward Jenner demonstrated vaccination against smallpox using cowpox in 1796.",
        "A global vaccination campaign led by the WHO began in 1967.",
        "The last known natural case of smallpox occurred in Somalia in 1977.",
        "Ring vaccination around outbreaks was key to the smallpox eradication strategy.",
    ], 2, 1, "Smallpox eradication is often cited as public health's greatest achievement."),
    ("saturn-rings", "Saturn", "What are Saturn's rings made of?", [
        "Saturn's rings consist mostly of water ice particles.",
        "Ring particles around Saturn range from dust grains to boulders several metres across.",
        "Galileo first observed Saturn's rings through a telescope in 1610.",
        "The Cassini spacecraft studied Saturn and its rings from 2004 to 2017.",
        "The main rings of Saturn span about two hundred eighty thousand kilometres but are mostly under a kilometre thick.",
        "The Cassini Division is a gap between Saturn's A and B rings.",
    ], 2, 0, "Saturn is a favourite first target for amateur astronomers."),
    ("lighthouse-alexandria", "The Lighthouse of Alexandria", "What was the Lighthouse of Alexandria?", [
        "The Lighthouse of Alexandria stood on the island of Pharos in Egypt.",
        "The Lighthouse of Alexandria was one of the Seven Wonders of the Ancient World.",
        "The lighthouse was built during the reign of Ptolemy II in the third century BCE.",
        "Earthquakes destroyed the Lighthouse of Alexandria between the tenth and fourteenth centuries.",
        "Stones from the lighthouse were reused to build the Citadel of Qaitbay.",
    ], 1, 0, "Artists have imagined the lighthouse's appearance for centuries."),
    ("internet-origins", "The Internet", "How did the Internet originate?", [
        "The Internet originated from the ARPANET, funded by the United States Department of Defense.",
        "The first ARPANET link was established between UCLA and Stanford in 1969.",
        "The TCP/IP protocols became the ARPANET standard on January 1, 1983.",
        "Vint Cerf and Bob Kahn designed the TCP/IP protocol suite.",
        "The domain name system was introduced in 1983.",
        "Tim Berners-Lee invented the World Wide Web at CERN in 1989.",
        "The National Science Foundation's NSFNET expanded academic networking in the 1980s.",
    ], 2, 1, "Histories of the Internet fill entire library shelves."),
    ("black-holes", "Black holes", "What is a black hole?", [
        "A black hole is a region of spacetime whose gravity prevents even light from escaping.",
        "The boundary of a black hole is called the event horizon.",
        "The Event Horizon Telescope released the first image of a black hole in 2019.",
        "Supermassive black holes reside at the centres of most large galaxies.",
    ], 1, 0, "Black holes feature prominently in popular science programmes."),
    ("olympic-games", "The Olympic Games", "Where did the Olympic Games originate?", [
        "The ancient Olympic Games were held at Olympia in Greece from 776 BCE.",
        "The ancient Olympics were part of a religious festival honouring Zeus.",
        "The modern Olympic Games were revived in Athens in 1896.",
        "Pierre de Coubertin founded the International Olympic Committee in 1894.",
        "The ancient Olympic Games were abolished in the fourth century CE.",
        "Winners at the ancient Olympics received wreaths of olive leaves.",
    ], 2, 1, "Olympic opening ceremonies draw enormous television audiences."),
    ("human-genome-project", "The Human Genome Project", "What did the Human Genome Project accomplish?", [
        "The Human Genome Project produced the first essentially complete sequence of human DNA.",
        "The Human Genome Project began in 1990 and was declared complete in 2003.",
        "The project determined the sequence of about three billion base pairs.",
        "The Human Genome Project found that humans have roughly twenty thousand protein-coding genes.",
        "The human genome data from the project was released into public databases.",
        "The Human Genome Project cost roughly three billion dollars.",
        "A private effort by Celera Genomics raced the public Human Genome Project.",
        "The project's data accelerated the development of modern DNA sequencing methods.",
    ], 4, 2, "The Human Genome Project is often compared to the Apollo programme."),
    ("venice-lagoon", "Venice", "Why is Venice sinking?", [
        "Venice is built on wooden piles driven into the mud of a lagoon.",
        "Groundwater extraction in the twentieth century accelerated the subsidence of Venice.",
        "Rising sea levels worsen flooding in Venice.",
        "The MOSE barrier system was built to protect Venice from high tides.",
        "Venice experiences periodic flooding events known as acqua alta.",
    ], 1, 0, "Venice's canals are lined with centuries-old palaces."),
    ("tea-history", "Tea", "How did tea spread around the world?", [
        "Tea drinking originated in China thousands of years ago.",
        "Tea reached Japan through Buddhist monks in the early ninth century.",
        "The Dutch East India Company first shipped tea to Europe in the early seventeenth century.",
        "Tea became a mass-market drink in Britain during the eighteenth century.",
        "The British East India Company established tea plantations in India in the nineteenth century.",
        "The clipper ships of the nineteenth century raced to deliver fresh tea from China.",
    ], 2, 1, "Tea ceremonies remain a celebrated tradition in several cultures."),
    ("north-star", "Polaris", "Why does Polaris appear stationary in the sky?", [
        "Polaris lies almost directly above Earth's northern rotational axis.",
        "Polaris is also known as the North Star.",
        "The apparent position of Polaris stays nearly fixed while other stars circle it.",
        "Earth's axial precession will shift the pole away from Polaris over thousands of years.",
    ], 1, 0, "Navigators have steered by Polaris for many centuries."),
    ("wright-brothers", "The Wright brothers", "Who achieved the first powered flight?", [
        "The Wright brothers achieved the first controlled powered flight on December 17, 1903.",
        "The first powered flights took place at Kitty Hawk, North Carolina.",
        "The Wright Flyer's first flight lasted twelve seconds and covered about thirty-seven metres.",
        "Orville Wright piloted the first flight while Wilbur Wright observed.",
        "The Wright brothers ran a bicycle shop in Dayton, Ohio.",
        "The Wright brothers developed three-axis control to steer their aircraft.",
        "Wind tunnel experiments guided the Wright brothers' wing designs.",
    ], 2, 0, "Replicas of the Wright Flyer hang in several aviation museums."),
    ("coral-atolls", "Coral atolls", "How do coral atolls form?", [
        "Coral atolls form as fringing reefs around volcanic islands that later subside.",
        "Charles Darwin proposed the subsidence theory of atoll formation.",
        "An atoll encloses a central lagoon where the island once stood.",
        "Drilling at Enewetak Atoll confirmed volcanic rock beneath thick coral layers.",
        "Atolls are most common in the tropical Pacific and Indian Oceans.",
    ], 2, 1, "Atoll lagoons are prized by underwater photographers."),
    ("chocolate-history", "Chocolate", "Where does chocolate come from?", [
        "Chocolate is made from the fermented and roasted seeds of the cacao tree.",
        "Mesoamerican cultures consumed cacao as a bitter drink for thousands of years.",
        "The Aztecs used cacao beans as a form of currency.",
        "Spanish colonists brought cacao to Europe in the sixteenth century.",
        "Solid eating chocolate was developed in the nineteenth century.",
        "West Africa now produces most of the world's cacao.",
    ], 1, 0, "Chocolate tasting has developed a vocabulary as rich as wine tasting."),
    ("seismographs", "Earthquakes", "How are earthquakes measured?", [
        "Seismographs record ground motion during earthquakes.",
        "The moment magnitude scale has largely replaced the Richter scale.",
        "Each whole step in earthquake magnitude represents about thirty-two times more energy.",
        "The Zhang Heng seismoscope of ancient China indicated the direction of distant earthquakes.",
        "Seismic networks locate earthquakes by comparing wave arrival times at multiple stations.",
    ], 2, 0, "Earthquake drills are routine in schools along the Pacific rim."),
    ("mount-everest", "Mount Everest", "How tall is Mount Everest?", [
        "Mount Everest rises eight thousand eight hundred forty-eight point eight six metres above sea level.",
        "Mount Everest stands on the border between Nepal and China.",
        "Edmund Hillary and Tenzing Norgay first reached the summit of Everest in 1953.",
        "Mount Everest grows by a few millimetres each year due to tectonic uplift.",
    ], 1, 0, "Everest expeditions have become a significant commercial industry."),
    ("renaissance-florence", "Florence", "Why was Florence central to the Renaissance?", [
        "Florence was a leading centre of the early Renaissance in the fifteenth century.",
        "The Medici family's patronage funded Florentine art and architecture.",
        "Filippo Brunelleschi engineered the dome of Florence Cathedral.",
        "The dome of Florence Cathedral was completed in 1436.",
        "Botticelli, Leonardo da Vinci and Michelangelo all worked in Florence.",
        "Florence's wealth came largely from banking and the wool trade.",
        "The Florentine florin was a standard gold coin of medieval Europe.",
    ], 2, 0, "Art students from around the world sketch in Florence's piazzas."),
    ("gps", "GPS", "How does GPS determine position?", [
        "GPS receivers compute position by timing signals from multiple satellites.",
        "The GPS constellation consists of at least twenty-four operational satellites.",
        "GPS satellites carry atomic clocks to keep precise time.",
        "A GPS receiver needs signals from at least four satellites to fix a position.",
        "The United States opened GPS to full civilian accuracy in 2000.",
        "Relativistic effects must be corrected for GPS to stay accurate.",
    ], 1, 0, "GPS guides everything from hiking apps to combine harvesters."),
    ("windmills-netherlands", "Dutch windmills", "Why did the Netherlands build so many windmills?", [
        "Dutch windmills were used to drain water from low-lying land.",
        "Windmills pumped water into canals to reclaim polders below sea level.",
        "The mills at Kinderdijk were built around 1740 and still stand today.",
        "Dutch windmills also ground grain and sawed timber.",
        "At their peak, about ten thousand windmills operated in the Netherlands.",
    ], 2, 0, "Windmills appear on much of the souvenir art sold in Amsterdam."),
    ("antarctic-treaty", "The Antarctic Treaty", "What does the Antarctic Treaty regulate?", [
        "The Antarctic Treaty reserves Antarctica for peaceful scientific use.",
        "The Antarctic Treaty was signed by twelve nations in 1959.",
        "The Antarctic Treaty bans military activity and nuclear testing on the continent.",
        "The treaty froze all territorial claims to Antarctica.",
        "The Antarctic Treaty entered into force in 1961.",
        "An environmental protocol added in 1991 bans Antarctic mineral mining.",
    ], 1, 0, "Antarctic research stations host scientists from dozens of countries."),
]

SRI_LANKA_GT = (
    "The Sri Lankan economic crisis was caused by multiple compounding factors. "
    "These include tax cuts and money creation by the government, which led to "
    "budget deficits and a decline in government revenue. The government's "
    "decision to shift to organic or biological farming also played a role. "
    "Additionally, the crisis was exacerbated by the 2019 Sri Lanka Easter "
    "bombings and the impact of the COVID-19 pandemic. The country's high "
    "external debt, with a significant increase in foreign debt in recent "
    "years, also contributed to the crisis. The combination of these factors "
    "resulted in unprecedented levels of inflation, near-depletion of foreign "
    "exchange reserves, shortages of medical supplies, and an increase in "
    "prices of basic commodities."
)

SRI_LANKA_UNGROUNDED = (
    "There were several factors that contributed to the Sri Lankan economic "
    "crisis: 1. High levels of government debt: Sri Lanka had accumulated a "
    "significant amount of government debt, both domestic and foreign. This "
    "debt burden became unsustainable, leading to a crisis in public finances. "
    "2. Fiscal mismanagement: The government had been running large budget "
    "deficits for several years, spending more than it was earning. This led "
    "to a widening fiscal deficit and increased borrowing to finance "
    "government expenditure. 3. Political instability: Sri Lanka experienced "
    "political instability during this period, with frequent changes in "
    "government and policy uncertainty. This created an unfavourable business "
    "environment and deterred foreign investment. 4. Declining exports: Sri "
    "Lanka's export sector, particularly garments and textiles, faced "
    "challenges due to global economic slowdowns and increased competition "
    "from other countries. This led to a decline in export earnings, which "
    "further strained the country's external finances. 5. High inflation: Sri "
    "Lanka experienced high inflation during this period, which eroded the "
    "purchasing power of the population and increased the cost of living. "
    "This put additional pressure on the economy and contributed to the "
    "crisis. 6. External shocks: Sri Lanka was also affected by external "
    "shocks, such as rising oil prices and global financial market "
    "volatility. These factors further exacerbated the economic challenges "
    "faced by the country. 7. Structural issues: Sri Lanka had several "
    "structural issues that hindered its economic growth, such as a lack of "
    "diversification in the economy, inadequate infrastructure, and low "
    "productivity levels. These issues made it difficult for the country to "
    "sustain economic growth and overcome the crisis."
)

SRI_LANKA_POOR = (
    "There were several factors that contributed to the Sri Lankan economic "
    "crisis. Sri Lanka is known for its beautiful beaches and rich cultural "
    "heritage."
)

CLIMATE_UNGROUNDED = (
    "The human climate niche refers to the range of climatic conditions in "
    "which humans can thrive and maintain a sustainable population. It "
    "encompasses various factors such as temperature, precipitation and "
    "humidity. Researchers use the concept of the human climate niche to "
    "study the impact of global warming on human habitability. The idea has "
    "been discussed in many recent commentaries on climate adaptation."
)

SPECIAL_RECORDS = [
    {
        "id": "sri-lanka-economic-crisis",
        "question": "What factors contributed to the Sri Lankan economic crisis?",
        "answers": {
            "ground_truth": SRI_LANKA_GT,
            "ungrounded": SRI_LANKA_UNGROUNDED,
            "poor": SRI_LANKA_POOR,
        },
        "facts": [
            "Tax cuts and money creation by the government contributed to the Sri Lankan economic crisis.",
            "Budget deficits and a decline in government revenue were factors in the Sri Lankan economic crisis.",
            "The governments decision to shift to organic or biological farming played a role in the crisis.",
            "The 2019 Sri Lanka Easter bombings exacerbated the economic crisis.",
            "The impact of the COVID 19 pandemic contributed to the Sri Lankan economic crisis.",
            "High external debt, with a significant increase in foreign debt in recent years, also contributed to the crisis.",
        ],
        "ungrounded_true": [5],
        "poor_true": [],
    },
    {
        "id": "pope-benedict-xvi",
        "question": "When did Pope Benedict XVI become the head of the Catholic Church?",
        "answers": {
            "ground_truth": (
                "Pope Benedict XVI became the head of the Catholic Church and "
                "sovereign of the Vatican City State on April 19, 2005. Born "
                "Joseph Ratzinger in Bavaria, Germany, he succeeded Pope John "
                "Paul II. Pope Benedict XVI resigned from the papacy in "
                "February 2013, becoming the first pope to resign in nearly "
                "six hundred years."
            ),
            "ungrounded": (
                "Pope Benedict XVI led the Catholic Church in the early "
                "twenty-first century. Pope Benedict XVI succeeded Pope John "
                "Paul II. Pope Benedict XVI resigned from the papacy in "
                "February 2013. He is also remembered for his theological "
                "writings and his fondness for cats."
            ),
            "poor": (
                "Pope Benedict XVI succeeded Pope John Paul II. The Vatican "
                "is the smallest state in the world and attracts many "
                "visitors each year."
            ),
        },
        "facts": [
            "Pope Benedict XVI became the head of the Catholic Church and sovereign of the Vatican City State on April 19, 2005.",
            "Pope Benedict XVI was born Joseph Ratzinger in Bavaria, Germany.",
            "Pope Benedict XVI succeeded Pope John Paul II.",
            "Pope Benedict XVI resigned from the papacy in February 2013.",
            "Pope Benedict XVI was the first pope to resign in nearly six hundred years.",
        ],
        "ungrounded_true": [2, 3],
        "poor_true": [2],
    },
    {
        "id": "human-climate-niche",
        "question": "What is the human climate niche?",
        "answers": {
            "ground_truth": (
                "The human climate niche refers to the range of climate "
                "conditions that have supported human life and activities "
                "over the past thousand years. Most human population has "
                "historically concentrated in regions with a mean annual "
                "temperature between eleven and fifteen degrees Celsius, and "
                "crops and livestock production are concentrated within the "
                "same conditions. Climate change is projected to shift the "
                "geographical position of the human climate niche, and "
                "researchers use the concept to study the impact of global "
                "warming on human habitability."
            ),
            "ungrounded": CLIMATE_UNGROUNDED,
            "poor": (
                "The human climate niche is an interesting scientific "
                "concept. Climate has been an important topic of public "
                "discussion in recent years."
            ),
        },
        "facts": [
            "The human climate niche refers to the range of climate conditions that have supported human life and activities over the past thousand years.",
            "Most human population has historically concentrated in regions with a mean annual temperature between eleven and fifteen degrees Celsius.",
            "Climate change is projected to shift the geographical position of the human climate niche.",
            "Crops and livestock production are concentrated within the human climate niche.",
            "The concept of the human climate niche is used to study the impact of global warming on human habitability.",
        ],
        "ungrounded_true": [4],
        "poor_true": [],
    },
]


def build_topic_record(entry):
    topic_id, subject, question, facts, u_count, p_count, tangent = entry
    n = len(facts)
    assert 0 <= u_count <= n and 0 <= p_count <= n, topic_id
    ungrounded_true = list(range(n - u_count, n))
    poor_true = list(range(p_count))

    ground_truth = " ".join(facts)

    mention = "the" + subject[3:] if subject.startswith("The ") else subject
    ungrounded_parts = [
        "There are several points often raised about %s." % mention
    ]
    ungrounded_parts += [facts[i] for i in ungrounded_true]
    ungrounded_parts.append(tangent)
    ungrounded_parts.append(
        "Accounts differ on the remaining details, and popular summaries "
        "often simplify the full picture."
    )
    ungrounded = " ".join(ungrounded_parts)

    poor_parts = ["That is a broad question."]
    poor_parts += [facts[i] for i in poor_true]
    poor_parts.append(
        "%s is widely considered a fascinating subject, and many people "
        "enjoy reading about it." % subject
    )
    poor = " ".join(poor_parts)

    record = {
        "id": topic_id,
        "question": question,
        "answers": {
            "ground_truth": ground_truth,
            "ungrounded": ungrounded,
            "poor": poor,
        },
        "facts": [{"index": i, "text": text} for i, text in enumerate(facts)],
        "annotations": [],
    }
    fill_annotations(record, set(ungrounded_true), set(poor_true))
    return record


def fill_annotations(record, ungrounded_true, poor_true):
    n = len(record["facts"])
    for i in range(n):
        record["annotations"].append(
            {"variant": "ground_truth", "fact": i, "label": True})
    for i in range(n):
        record["annotations"].append(
            {"variant": "ungrounded", "fact": i, "label": i in ungrounded_true})
    for i in range(n):
        record["annotations"].append(
            {"variant": "poor", "fact": i, "label": i in poor_true})


def build_special_record(spec):
    record = {
        "id": spec["id"],
        "question": spec["question"],
        "answers": spec["answers"],
        "facts": [{"index": i, "text": t} for i, t in enumerate(spec["facts"])],
        "annotations": [],
    }
    fill_annotations(record, set(spec["ungrounded_true"]), set(spec["poor_true"]))
    return record


def main():
    records = [build_special_record(s) for s in SPECIAL_RECORDS]
    records += [build_topic_record(t) for t in TOPICS]

    pairs = len(records)
    facts = sum(len(r["facts"]) for r in records)
    annotations = sum(len(r["annotations"]) for r in records)
    by_variant = {"ground_truth": 0, "ungrounded": 0, "poor": 0}
    for r in records:
        seen = set()
        assert r["answers"]["ground_truth"], r["id"]
        assert r["answers"]["ungrounded"], r["id"]
        assert r["answers"]["poor"], r["id"]
        for a in r["annotations"]:
            key = (a["variant"], a["fact"])
            assert key not in seen, (r["id"], key)
            seen.add(key)
            if a["label"]:
                by_variant[a["variant"]] += 1

    print("pairs=%d facts=%d annotations=%d" % (pairs, facts, annotations))
    print("gold-True per variant: %s" % by_variant)
    print("ungrounded accuracy: %.4f" % (100.0 * by_variant["ungrounded"] / facts))
    print("poor accuracy: %.4f" % (100.0 * by_variant["poor"] / facts))

    assert pairs == 50, pairs
    assert facts == 281, facts
    assert annotations == 3 * 281, annotations
    assert by_variant["ground_truth"] == 281
    assert by_variant["ungrounded"] == 86, by_variant
    assert by_variant["poor"] == 24, by_variant

    out_path = os.path.join(os.path.dirname(__file__), "..", "data",
                            "wikievalfacts.jsonl")
    header = {
        "schema": "faaf.dataset",
        "version": 1,
        "source": "wikievalfacts-fixture",
        "dataset_version": "1.0.0",
    }
    with open(out_path, "w") as out:
        out.write(json.dumps(header, separators=(",", ":")) + "\n")
        for record in records:
            out.write(json.dumps(record, separators=(",", ":")) + "\n")
    print("wrote %s" % os.path.normpath(out_path))


if __name__ == "__main__":
    sys.exit(main())
