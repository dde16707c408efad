"""Seeded demo dataset: three ontologies, a component store, and a nested
skill assembly.

The laser-scanner pool is built so that exactly two wrappers declare an
update frequency of at least 30 Hz together with measured reflectance
values, and exactly one of those comes from Acme; discovery tests rely on
those counts. The door assembly wires five sub-skills plus a coordinator
into a validation-clean whole.
"""

from __future__ import annotations

from decimal import Decimal
from pathlib import Path

from .ontology import TBox, load_ontology_files
from .records import (
    AttributeValue,
    ComponentRecord,
    DeviceSpec,
    HWInterfaceSpec,
    InterfaceSpec,
    MetaInfo,
    NonTypeSpecific,
)
from .skills import Connection, EndpointRef, SkillGraph
from .store import Store

EQ5_QUERY = (
    "and(HAComponent, some(supportsDevice, and(LaserScanner, "
    "attr(UpdateFrequencyInHz, >=, 30), some(hasAttribute, MeasuredReflectance))))"
)

HARDWARE_ONTOLOGY = """\
# Hardware classification: levels 0-3 plus device capability axioms.
concept HardwareType
concept Sensor
concept Actuator
concept Controller
concept IODevice
concept HMIDevice
concept Tool
concept Camera
concept RGBDCamera
concept LaserScanner
concept SafetyLaserScanner
concept ForceTorqueSensor
concept RobotArm
concept Gripper
concept TeachPendant
role hasCapability
attribute UpdateFrequencyInHz : decimal
attribute MeasuredReflectance : int
attribute RangeInMeters : decimal
attribute AngularResolutionInDeg : decimal
attribute PayloadInKg : decimal
attribute FPS : decimal
axiom Sensor SubClassOf HardwareType
axiom Actuator SubClassOf HardwareType
axiom Controller SubClassOf HardwareType
axiom IODevice SubClassOf HardwareType
axiom HMIDevice SubClassOf HardwareType
axiom Tool SubClassOf HardwareType
axiom Camera SubClassOf Sensor
axiom RGBDCamera SubClassOf Camera
axiom LaserScanner SubClassOf Sensor
axiom SafetyLaserScanner SubClassOf LaserScanner
axiom ForceTorqueSensor SubClassOf Sensor
axiom RobotArm SubClassOf Actuator
axiom Gripper SubClassOf Tool
axiom TeachPendant SubClassOf HMIDevice
axiom SafetyLaserScanner SubClassOf some(hasCapability, SafeMonitoringOf2DFields)
axiom LaserScanner SubClassOf some(hasCapability, DistanceMeasurementCapability)
"""

SOFTWARE_ONTOLOGY = """\
# Software classification plus the interface bundles each type demands.
concept SoftwareType
concept AbstractPlanning
concept Cognition
concept Control
concept HumanMachineInteraction
concept Perception
concept Planning
concept Simulation
concept Coordination
concept Coordinator
concept PathFollowing
concept Localization
concept Mapping
concept ObjectDetectionType
concept PoseDetection
concept Detect_Object_in_Image
concept TwoD
concept ThreeD
concept DeviceWrapper
concept RGBD-Camera_Wrapper
concept LaserScanner_Wrapper
concept TrajectoryTeachIn
concept sensor_msgs/Image
concept sensor_msgs/LaserScan
concept object_detection/Object_detected
concept geometry_msgs/Pose2D
concept PoseUpdateRateInHz
role hasCapability
role hasAttribute
role providesTopic
role requiresTopic
attribute PoseUpdateRateInHz : decimal
axiom AbstractPlanning SubClassOf SoftwareType
axiom Cognition SubClassOf SoftwareType
axiom Control SubClassOf SoftwareType
axiom HumanMachineInteraction SubClassOf SoftwareType
axiom Perception SubClassOf SoftwareType
axiom Planning SubClassOf SoftwareType
axiom Simulation SubClassOf SoftwareType
axiom Coordination SubClassOf SoftwareType
axiom TwoD SubClassOf SoftwareType
axiom ThreeD SubClassOf SoftwareType
axiom DeviceWrapper SubClassOf SoftwareType
axiom Coordinator SubClassOf Coordination
axiom PathFollowing SubClassOf Control
axiom Localization SubClassOf Perception
axiom Mapping SubClassOf Perception
axiom ObjectDetectionType SubClassOf Perception
axiom PoseDetection SubClassOf Perception
axiom Detect_Object_in_Image SubClassOf ObjectDetectionType
axiom TrajectoryTeachIn SubClassOf Planning
axiom RGBD-Camera_Wrapper SubClassOf DeviceWrapper
axiom LaserScanner_Wrapper SubClassOf DeviceWrapper
axiom ObjectDetectionType SubClassOf some(hasCapability, ObjectDetectionCapability)
axiom Localization SubClassOf some(hasCapability, LocalizationCapability)
axiom Mapping SubClassOf some(hasCapability, MappingCapability)
axiom Coordinator SubClassOf some(hasCapability, CoordinationCapability)
axiom and(Localization, TwoD) SubClassOf some(providesTopic, geometry_msgs/Pose2D)
axiom and(Localization, TwoD) SubClassOf some(hasCapability, Localization2DCapability)
axiom and(Localization, TwoD) SubClassOf some(hasAttribute, PoseUpdateRateInHz)
axiom Detect_Object_in_Image SubClassOf some(requiresTopic, sensor_msgs/Image)
axiom Detect_Object_in_Image SubClassOf some(providesTopic, object_detection/Object_detected)
axiom RGBD-Camera_Wrapper SubClassOf some(providesTopic, sensor_msgs/Image)
axiom LaserScanner_Wrapper SubClassOf some(providesTopic, sensor_msgs/LaserScan)
"""

CAPABILITY_ONTOLOGY = """\
# Capability classification; capabilities are retrievable deduction targets.
capability Capability
capability PerceptionCapability
capability SafetyCapability
capability CoordinationCapability
capability ObjectDetectionCapability
capability LocalizationCapability
capability Localization2DCapability
capability MappingCapability
capability DistanceMeasurementCapability
capability SafeMonitoringOf2DFields
role hasCapability
axiom PerceptionCapability SubClassOf Capability
axiom SafetyCapability SubClassOf Capability
axiom CoordinationCapability SubClassOf Capability
axiom ObjectDetectionCapability SubClassOf PerceptionCapability
axiom LocalizationCapability SubClassOf PerceptionCapability
axiom MappingCapability SubClassOf PerceptionCapability
axiom DistanceMeasurementCapability SubClassOf PerceptionCapability
axiom Localization2DCapability SubClassOf LocalizationCapability
axiom SafeMonitoringOf2DFields SubClassOf SafetyCapability
"""

ONTOLOGY_FILES = {
    "hardware.rdsl": HARDWARE_ONTOLOGY,
    "software.rdsl": SOFTWARE_ONTOLOGY,
    "capability.rdsl": CAPABILITY_ONTOLOGY,
}


def _meta(description: str, status: str = "Released", version: str = "1.0.0", author: str = "ReuseWorks GmbH") -> MetaInfo:
    return MetaInfo(
        author=author,
        owner="demo",
        created_at="2015-06-01T10:00:00Z",
        version=version,
        description=description,
        status=status,
    )


def _topic(direction: str, name: str, message_type: str) -> InterfaceSpec:
    return InterfaceSpec("Topic", direction, name, message_type)


def _attr(name: str, value: str) -> AttributeValue:
    return AttributeValue(name, Decimal(value))


def _laser_wrapper(
    record_id: str,
    manufacturer: str,
    model: str,
    frequency: str,
    reflectance: bool,
    status: str = "Released",
    safety: bool = False,
) -> ComponentRecord:
    attrs = [_attr("UpdateFrequencyInHz", frequency), _attr("RangeInMeters", "30")]
    if reflectance:
        attrs.append(_attr("MeasuredReflectance", "1"))
    return ComponentRecord(
        id=record_id,
        meta=_meta(f"ROS wrapper for the {manufacturer} {model} laser scanner", status=status, author=manufacturer),
        kind="HAComponent",
        sw_types=("LaserScanner_Wrapper",),
        non_type_specific=NonTypeSpecific(interfaces=(_topic("Provides", "scan_out", "sensor_msgs/LaserScan"),)),
        supported_devices=(
            DeviceSpec(
                manufacturer=manufacturer,
                model_name=model,
                model_number=model.replace(" ", "-").upper(),
                hw_types=("SafetyLaserScanner",) if safety else ("LaserScanner",),
                attributes=tuple(attrs),
            ),
        ),
        hw_interfaces=(HWInterfaceSpec("Ethernet", "EtherNet/IP"),),
    )


def _rgbd_wrapper(record_id: str, manufacturer: str, model: str, fps: str, status: str = "Released") -> ComponentRecord:
    return ComponentRecord(
        id=record_id,
        meta=_meta(f"ROS wrapper for the {manufacturer} {model} RGBD camera", status=status, author=manufacturer),
        kind="HAComponent",
        sw_types=("RGBD-Camera_Wrapper",),
        non_type_specific=NonTypeSpecific(
            interfaces=(_topic("Provides", "image_raw", "sensor_msgs/Image"),),
            attributes=(_attr("FPS", fps),),
        ),
        supported_devices=(
            DeviceSpec(
                manufacturer=manufacturer,
                model_name=model,
                model_number=model.replace(" ", "-").upper(),
                hw_types=("RGBDCamera",),
                attributes=(),
            ),
        ),
        hw_interfaces=(HWInterfaceSpec("USB", "USB3 Vision"),),
    )


def demo_records() -> list[ComponentRecord]:
    records: list[ComponentRecord] = [
        # -- laser scanner wrappers (exactly two satisfy the >=30 Hz +
        # reflectance discovery query; exactly one of those is Acme) -------
        _laser_wrapper("ha_laser_acme", "Acme Sensorik", "ScanMax 30", "50", reflectance=True),
        _laser_wrapper("ha_laser_borealis", "Borealis Optics", "BeamRange 7", "40", reflectance=True),
        _laser_wrapper("ha_laser_helix", "Helix Automation", "EcoScan E2", "25", reflectance=True),
        _laser_wrapper("ha_laser_quanta", "Quanta Devices", "QD 8", "50", reflectance=False, status="Prototype"),
        _laser_wrapper("ha_safety_borealis", "Borealis Optics", "SafeGuard S3", "12.5", reflectance=False, safety=True),
        # -- RGBD camera wrappers (60 / 30 / 25 fps boundary cases) --------
        _rgbd_wrapper("ha_rgbd_tiefsee", "Tiefsee Vision", "DepthEye 60", "60"),
        _rgbd_wrapper("ha_rgbd_protoopt", "ProtoOptics", "PO 30", "30"),
        _rgbd_wrapper("ha_rgbd_helix", "Helix Automation", "CamEco 25", "25", status="Prototype"),
        # -- other hardware wrappers ---------------------------------------
        ComponentRecord(
            id="ha_arm_orion",
            meta=_meta("Driver for the Orion Robotics OA-6 arm", author="Orion Robotics"),
            kind="HAComponent",
            non_type_specific=NonTypeSpecific(
                interfaces=(InterfaceSpec("Action", "Provides", "follow_trajectory", "control_msgs/FollowJointTrajectory"),),
            ),
            supported_devices=(
                DeviceSpec(
                    manufacturer="Orion Robotics",
                    model_name="OA-6",
                    model_number="OA-6-STD",
                    hw_types=("RobotArm",),
                    attributes=(_attr("PayloadInKg", "6"),),
                ),
            ),
            hw_interfaces=(HWInterfaceSpec("Ethernet", "EtherCAT"),),
        ),
        ComponentRecord(
            id="ha_gripper_clamp",
            meta=_meta("Two-finger gripper driver", author="ClampCo"),
            kind="HAComponent",
            non_type_specific=NonTypeSpecific(
                interfaces=(InterfaceSpec("Service", "Provides", "grip", "std_srvs/SetBool"),),
            ),
            supported_devices=(
                DeviceSpec(manufacturer="ClampCo", model_name="CG-2", model_number="CG-2", hw_types=("Gripper",)),
            ),
            hw_interfaces=(HWInterfaceSpec("CAN", "CANopen"),),
        ),
        ComponentRecord(
            id="ha_force_orion",
            meta=_meta("Force/torque sensor driver", author="Orion Robotics"),
            kind="HAComponent",
            non_type_specific=NonTypeSpecific(
                interfaces=(_topic("Provides", "wrench", "geometry_msgs/WrenchStamped"),),
            ),
            supported_devices=(
                DeviceSpec(manufacturer="Orion Robotics", model_name="FT-1", model_number="FT-1", hw_types=("ForceTorqueSensor",)),
            ),
            hw_interfaces=(HWInterfaceSpec("RS232", "proprietary"),),
        ),
        ComponentRecord(
            id="ha_teach_pendant",
            meta=_meta("Teach pendant publishing recorded waypoints", author="Orion Robotics"),
            kind="HAComponent",
            non_type_specific=NonTypeSpecific(
                interfaces=(_topic("Provides", "waypoints_out", "teach_msgs/Waypoints"),),
            ),
            supported_devices=(
                DeviceSpec(manufacturer="Orion Robotics", model_name="TeachMate", model_number="TM-1", hw_types=("TeachPendant",)),
            ),
            hw_interfaces=(HWInterfaceSpec("USB", "HID"),),
        ),
        # -- software components --------------------------------------------
        ComponentRecord(
            id="sw_ravision",
            meta=_meta("Detects whether an object is present in an image"),
            kind="SWComponent",
            sw_types=("Detect_Object_in_Image",),
            non_type_specific=NonTypeSpecific(
                interfaces=(
                    _topic("Requires", "image_in", "sensor_msgs/Image"),
                    _topic("Provides", "object_detected", "object_detection/Object_detected"),
                ),
            ),
            requirements=("RGBD-Camera_Wrapper.FPS > 30.0",),
        ),
        ComponentRecord(
            id="sw_agv_localization",
            meta=_meta("2D laser localization for AGV platforms"),
            kind="SWComponent",
            sw_types=("Localization", "TwoD"),
            non_type_specific=NonTypeSpecific(
                interfaces=(
                    _topic("Requires", "scan_in", "sensor_msgs/LaserScan"),
                    _topic("Provides", "pose_out", "geometry_msgs/Pose2D"),
                ),
                attributes=(_attr("PoseUpdateRateInHz", "15"),),
                parameters=("map_file",),
            ),
            requirements=(
                "LaserScanner.UpdateFrequencyInHz >= 30",
                "LaserScanner.MeasuredReflectance >= 0",
            ),
        ),
        ComponentRecord(
            id="sw_localization_mk2",
            meta=_meta("Drop-in 2D localization, reflectance-weighted matching"),
            kind="SWComponent",
            sw_types=("Localization", "TwoD"),
            non_type_specific=NonTypeSpecific(
                interfaces=(
                    _topic("Requires", "scan_in", "sensor_msgs/LaserScan"),
                    _topic("Provides", "pose", "geometry_msgs/Pose2D"),
                    _topic("Provides", "diagnostics", "std_msgs/String"),
                ),
                attributes=(_attr("PoseUpdateRateInHz", "20"),),
            ),
            requirements=("LaserScanner.UpdateFrequencyInHz >= 30",),
        ),
        ComponentRecord(
            id="sw_visual_localization",
            meta=_meta("Visual 3D localization from RGBD input", status="Prototype"),
            kind="SWComponent",
            sw_types=("Localization", "ThreeD"),
            non_type_specific=NonTypeSpecific(
                interfaces=(
                    _topic("Requires", "image_in", "sensor_msgs/Image"),
                    _topic("Provides", "pose_out", "geometry_msgs/PoseStamped"),
                ),
            ),
            requirements=("RGBD-Camera_Wrapper.FPS >= 15",),
        ),
        ComponentRecord(
            id="sw_grid_mapping",
            meta=_meta("Occupancy grid mapping from laser scans"),
            kind="SWComponent",
            sw_types=("Mapping", "TwoD"),
            non_type_specific=NonTypeSpecific(
                capabilities=("MappingCapability",),
                interfaces=(
                    _topic("Requires", "scan_in", "sensor_msgs/LaserScan"),
                    _topic("Provides", "map_out", "nav_msgs/OccupancyGrid"),
                ),
            ),
        ),
        ComponentRecord(
            id="sw_path_planner",
            meta=_meta("Plans joint trajectories over an occupancy grid"),
            kind="SWComponent",
            sw_types=("Planning",),
            non_type_specific=NonTypeSpecific(
                interfaces=(
                    _topic("Requires", "map_in", "nav_msgs/OccupancyGrid"),
                    _topic("Requires", "pose_in", "geometry_msgs/Pose2D"),
                    _topic("Provides", "trajectory_out", "trajectory_msgs/JointTrajectory"),
                ),
            ),
        ),
        ComponentRecord(
            id="sw_trajectory_controller",
            meta=_meta("Executes trajectories with constant-force pressing"),
            kind="SWComponent",
            sw_types=("Control", "PathFollowing"),
            non_type_specific=NonTypeSpecific(
                interfaces=(
                    InterfaceSpec("Action", "Requires", "follow_trajectory", "control_msgs/FollowJointTrajectory"),
                    _topic("Requires", "trajectory_in", "trajectory_msgs/JointTrajectory"),
                    _topic("Requires", "pose_in", "geometry_msgs/Pose2D"),
                    _topic("Requires", "trigger_in", "object_detection/Object_detected"),
                    _topic("Requires", "estop_in", "safety_msgs/EmergencyStop"),
                    _topic("Provides", "status", "std_msgs/String"),
                ),
                parameters=("force_setpoint",),
            ),
            requirements=("RobotArm.PayloadInKg >= 3",),
        ),
        ComponentRecord(
            id="sw_safety_monitor",
            meta=_meta("Monitors protective fields and raises emergency stops"),
            kind="SWComponent",
            sw_types=("Perception",),
            non_type_specific=NonTypeSpecific(
                interfaces=(
                    _topic("Requires", "scan_in", "sensor_msgs/LaserScan"),
                    _topic("Provides", "estop", "safety_msgs/EmergencyStop"),
                ),
            ),
        ),
        ComponentRecord(
            id="sw_door_coordinator",
            meta=_meta("Sequences the door assembly process"),
            kind="SWComponent",
            sw_types=("Coordinator",),
            non_type_specific=NonTypeSpecific(
                interfaces=(_topic("Provides", "sequence_state", "std_msgs/String"),),
                parameters=("cycle_time",),
            ),
        ),
        ComponentRecord(
            id="sw_trajectory_import",
            meta=_meta("Imports taught waypoints as executable trajectories"),
            kind="SWComponent",
            sw_types=("TrajectoryTeachIn",),
            non_type_specific=NonTypeSpecific(
                interfaces=(
                    _topic("Requires", "waypoints_in", "teach_msgs/Waypoints"),
                    _topic("Provides", "trajectory_out", "trajectory_msgs/JointTrajectory"),
                ),
            ),
        ),
        ComponentRecord(
            id="sw_pose_detection",
            meta=_meta("Estimates object poses from point clouds", status="Model"),
            kind="SWComponent",
            sw_types=("PoseDetection",),
            non_type_specific=NonTypeSpecific(
                interfaces=(
                    _topic("Requires", "cloud_in", "sensor_msgs/PointCloud2"),
                    _topic("Provides", "pose_out", "geometry_msgs/PoseStamped"),
                ),
            ),
        ),
    ]
    return records


def _skill_record(record_id: str, description: str, body: str, sw_types=(), interfaces=()) -> ComponentRecord:
    return ComponentRecord(
        id=record_id,
        meta=_meta(description),
        kind="Skill",
        sw_types=tuple(sw_types),
        non_type_specific=NonTypeSpecific(interfaces=tuple(interfaces)),
        skill_body=body,
    )


def _conn(src_instance: str, src_name: str, dst_instance: str, dst_name: str, kind: str = "Topic") -> Connection:
    return Connection(EndpointRef(src_instance, kind, src_name), EndpointRef(dst_instance, kind, dst_name))


def demo_skill_graphs() -> dict[str, SkillGraph]:
    return {
        "door_detection": SkillGraph(
            instances={"cam": "ha_rgbd_tiefsee", "detect": "sw_ravision"},
            connections=(_conn("cam", "image_raw", "detect", "image_in"),),
        ),
        "door_localization": SkillGraph(
            instances={"scan": "ha_laser_acme", "loc": "sw_agv_localization"},
            connections=(_conn("scan", "scan_out", "loc", "scan_in"),),
            parameters={"loc": {"map_file": "doors.map"}},
        ),
        "trajectory_execution": SkillGraph(
            instances={"arm": "ha_arm_orion", "ctrl": "sw_trajectory_controller"},
            connections=(_conn("arm", "follow_trajectory", "ctrl", "follow_trajectory", kind="Action"),),
            parameters={"ctrl": {"force_setpoint": "35.0"}},
        ),
        "safety_control": SkillGraph(
            instances={"sscan": "ha_safety_borealis", "mon": "sw_safety_monitor"},
            connections=(_conn("sscan", "scan_out", "mon", "scan_in"),),
        ),
        "teach_in": SkillGraph(
            instances={"pendant": "ha_teach_pendant", "imp": "sw_trajectory_import"},
            connections=(_conn("pendant", "waypoints_out", "imp", "waypoints_in"),),
        ),
        "door_assembly": SkillGraph(
            instances={
                "det": "skill_door_detection",
                "locz": "skill_door_localization",
                "traj": "skill_trajectory_execution",
                "safe": "skill_safety_control",
                "teach": "skill_teach_in",
                "coord": "sw_door_coordinator",
            },
            connections=(
                _conn("det", "detect/object_detected", "traj", "ctrl/trigger_in"),
                _conn("locz", "loc/pose_out", "traj", "ctrl/pose_in"),
                _conn("safe", "mon/estop", "traj", "ctrl/estop_in"),
                _conn("teach", "imp/trajectory_out", "traj", "ctrl/trajectory_in"),
            ),
            coordinator="coord",
            parameters={"coord": {"cycle_time": "12"}},
        ),
    }


def demo_skill_records() -> list[ComponentRecord]:
    return [
        _skill_record(
            "skill_door_detection",
            "Detects the door and signals object presence",
            "door_detection",
            sw_types=("ObjectDetectionType",),
            interfaces=(_topic("Provides", "detect/object_detected", "object_detection/Object_detected"),),
        ),
        _skill_record(
            "skill_door_localization",
            "Localizes the door in the work cell",
            "door_localization",
            sw_types=("Localization", "TwoD"),
            interfaces=(_topic("Provides", "loc/pose_out", "geometry_msgs/Pose2D"),),
        ),
        _skill_record(
            "skill_trajectory_execution",
            "Presses the insulation matting along the taught contour",
            "trajectory_execution",
            sw_types=("Control",),
            interfaces=(
                _topic("Requires", "ctrl/trigger_in", "object_detection/Object_detected"),
                _topic("Requires", "ctrl/pose_in", "geometry_msgs/Pose2D"),
                _topic("Requires", "ctrl/estop_in", "safety_msgs/EmergencyStop"),
                _topic("Requires", "ctrl/trajectory_in", "trajectory_msgs/JointTrajectory"),
                _topic("Provides", "ctrl/status", "std_msgs/String"),
            ),
        ),
        _skill_record(
            "skill_safety_control",
            "Supervises the protective field around the robot",
            "safety_control",
            interfaces=(_topic("Provides", "mon/estop", "safety_msgs/EmergencyStop"),),
        ),
        _skill_record(
            "skill_teach_in",
            "Imports taught trajectories",
            "teach_in",
            interfaces=(_topic("Provides", "imp/trajectory_out", "trajectory_msgs/JointTrajectory"),),
        ),
        _skill_record(
            "skill_door_assembly",
            "Complete sound-insulation pressing assembly",
            "door_assembly",
            interfaces=(_topic("Provides", "traj/ctrl/status", "std_msgs/String"),),
        ),
    ]


def write_demo_ontologies(directory: str | Path) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for filename, text in ONTOLOGY_FILES.items():
        path = directory / filename
        path.write_text(text, encoding="utf-8")
        paths.append(path)
    return paths


def load_demo_tbox() -> TBox:
    import tempfile

    with tempfile.TemporaryDirectory() as tmp:
        return load_ontology_files(write_demo_ontologies(tmp))


def init_demo(base_dir: str | Path) -> tuple[list[Path], Path]:
    """Writes ontologies plus a populated store; returns (ontology paths, store dir)."""
    base_dir = Path(base_dir)
    ontology_paths = write_demo_ontologies(base_dir / "ontologies")
    store_dir = base_dir / "store"
    tbox = load_ontology_files(ontology_paths)
    store = Store(store_dir, tbox)
    for record in demo_records():
        store.add(record)
    for name, graph in demo_skill_graphs().items():
        store.save_skill(name, graph.to_json_dict())
    for record in demo_skill_records():
        store.add(record)
    return ontology_paths, store_dir
