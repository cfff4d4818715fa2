"""The frozen demonstration dataset.

Faculty carry no asserted ``rdf:type``; their typing comes from domain and
range rules, as it would for data ingested from a CSV directory.
Departments and programmes are typed and labelled explicitly.  The eight
disciplines are registered with ``rdfs:subClassOf fx:SubjectArea`` so that
queries can tell a discipline from a narrower specialisation.
"""

from typing import List, Optional

from .schema import Vocab, default_base
from .terms import RDFS_COMMENT, RDFS_LABEL, RDFS_SUBCLASS_OF, RDF_TYPE, Triple, literal

DEPARTMENTS = {
    "BScMathematicsDept": "BSc Mathematics",
    "MScPhysicsDept": "MSc Physics",
    "CSEDept": "Computer Science and Engineering",
    "CivilEngineeringDept": "Civil Engineering",
    "EnvironmentalScienceDept": "Environmental Science",
}

PROGRAMS = {
    "BScMathematics": ("BSc", "BSc Mathematics"),
    "MScPhysics": ("MSc", "MSc Physics"),
    "BTechCSE": ("BTech", "BTech CSE"),
    "MTechCSE": ("MTech", "MTech CSE"),
    "BTechCivil": ("BTech", "BTech Civil Engineering"),
}

DISCIPLINES = ("ComputerScience", "Mathematics", "Physics", "Chemistry",
               "EnvironmentalScience", "CivilEngineering", "MechanicalEngineering",
               "Biotechnology")

# local name -> (name, departments, email, expertise, teaches, programmes)
FACULTY = {
    "PriyaSharma": ("Priya Sharma", ["MScPhysicsDept"], "priyash@university.edu",
                    ["QuantumMechanics"], ["QuantumMechanics"], ["MScPhysics"]),
    "SunitaDas": ("Sunita Das", ["MScPhysicsDept"], "sdas@university.edu",
                  ["Optics"], ["Optics", "Thermodynamics"], ["MScPhysics"]),
    "RakeshYadav": ("Rakesh Yadav", ["BScMathematicsDept"], "ryadav@university.edu",
                    ["Calculus"], ["Calculus", "AppliedMathematics"], ["BScMathematics"]),
    "MeenaIyer": ("Meena Iyer", ["BScMathematicsDept", "CSEDept"], "miyer@university.edu",
                  ["Calculus", "ArtificialIntelligence"], ["Calculus"],
                  ["BScMathematics", "BTechCSE"]),
    "ArvindMenon": ("Arvind Menon", ["CSEDept"], "amenon@university.edu",
                    ["Mathematics", "ComputerScience", "DataScience"], ["DataScience"],
                    ["MTechCSE"]),
    "SureshKumar": ("Suresh Kumar", ["CSEDept"], "skumar@university.edu",
                    ["DataStructures"], ["DataStructures"], ["MTechCSE", "BTechCSE"]),
    "AnjaliVerma": ("Anjali Verma", ["CSEDept"], "averma@university.edu",
                    ["Cryptography"], ["Cryptography"], ["MTechCSE"]),
    "MdRiaz": ("Md. Riaz", ["CSEDept"], None,
               ["DataMining"], ["DataMining"], ["BTechCSE", "MTechCSE"]),
    "KavitaRao": ("Kavita Rao", ["EnvironmentalScienceDept"], "krao@university.edu",
                  ["EnvironmentalScience"], ["EnvironmentalScience"], []),
    "RajeshGupta": ("Rajesh Gupta", ["CivilEngineeringDept"], "rgupta@university.edu",
                    ["EnvironmentalScience", "CivilEngineering"], ["CivilEngineering"],
                    ["BTechCivil"]),
    "VikramSingh": ("Vikram Singh", ["CivilEngineeringDept"], "vsingh@university.edu",
                    ["AppliedMathematics"], ["AppliedMathematics"], ["BTechCivil"]),
}

COLLABORATIONS = [("SunitaDas", "PriyaSharma"), ("MdRiaz", "SureshKumar")]

NOTES = {"VikramSingh": "Applies numerical methods to structural analysis of bridges and buildings."}

SEED_SIZE = 105


def build_seed_dataset(base: Optional[str] = None) -> List[Triple]:
    v = Vocab(base or default_base())
    out = []
    add = lambda s, p, o: out.append(Triple(s, p, o))
    for local, label in DEPARTMENTS.items():
        add(v[local], RDF_TYPE, v.Department)
        add(v[local], RDFS_LABEL, literal(label))
    for local, (cls, label) in PROGRAMS.items():
        add(v[local], RDF_TYPE, v[cls])
        add(v[local], RDFS_LABEL, literal(label))
    for local in DISCIPLINES:
        add(v[local], RDFS_SUBCLASS_OF, v.SubjectArea)
    for local, (name, depts, email, expertise, teaches, programs) in FACULTY.items():
        f = v[local]
        add(f, v.hasName, literal(name))
        for d in depts:
            add(f, v.belongsToDepartment, v[d])
        if email:
            add(f, v.hasEmail, literal(email))
        for s in expertise:
            add(f, v.hasExpertiseIn, v[s])
        for s in teaches:
            add(f, v.teaches, v[s])
        for p in programs:
            add(f, v.teachesIn, v[p])
        if local in NOTES:
            add(f, RDFS_COMMENT, literal(NOTES[local]))
    for a, b in COLLABORATIONS:
        add(v[a], v.collaboratesWith, v[b])
    return out
