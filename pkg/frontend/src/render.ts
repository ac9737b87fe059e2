// Three.js view: one capsule per segment posed from the service frames and
// tinted by the service risk colors; scene meshes with a wireframe toggle;
// orbit camera; a grab gizmo on the dragged end-effector.

import * as THREE from "three";
import { OrbitControls } from "three/examples/jsm/controls/OrbitControls.js";
import type { FramesPayload, LiveColors, SceneUploadResponse, Vec3 } from "./types";

const NEUTRAL = new THREE.Color(0x8a8f98);
const Y_AXIS = new THREE.Vector3(0, 1, 0);

function baseName(segment: string): string {
  return segment.endsWith("_l") || segment.endsWith("_r")
    ? segment.slice(0, -2)
    : segment;
}

export class MannequinView {
  readonly scene = new THREE.Scene();
  readonly camera: THREE.PerspectiveCamera;
  readonly renderer: THREE.WebGLRenderer;
  private readonly controls: OrbitControls;
  private readonly capsules = new Map<string, THREE.Mesh>();
  private readonly sceneMeshes: THREE.Mesh[] = [];
  private readonly gizmo: THREE.Mesh;
  redraws = 0;

  constructor(container: HTMLElement) {
    const width = container.clientWidth || 800;
    const height = container.clientHeight || 600;
    this.camera = new THREE.PerspectiveCamera(50, width / height, 0.01, 50);
    this.camera.up.set(0, 0, 1); // engine frames are Z-up
    this.camera.position.set(2.4, -1.8, 1.6);
    this.renderer = new THREE.WebGLRenderer({ antialias: true });
    this.renderer.setSize(width, height);
    this.renderer.setClearColor(0x1c1e24);
    container.appendChild(this.renderer.domElement);

    this.controls = new OrbitControls(this.camera, this.renderer.domElement);
    this.controls.target.set(0, 0, 1.0);

    this.scene.add(new THREE.AmbientLight(0xffffff, 0.65));
    const sun = new THREE.DirectionalLight(0xffffff, 1.4);
    sun.position.set(3, -4, 6);
    this.scene.add(sun);
    const grid = new THREE.GridHelper(4, 16, 0x3a3f4a, 0x2a2e38);
    grid.rotation.x = Math.PI / 2; // grid lies in the Z-up ground plane
    this.scene.add(grid);

    this.gizmo = new THREE.Mesh(
      new THREE.SphereGeometry(0.035, 20, 14),
      new THREE.MeshBasicMaterial({ color: 0xffc832, wireframe: true }),
    );
    this.gizmo.visible = false;
    this.scene.add(this.gizmo);
  }

  /** Rebuild or update the capsule set from a frames payload. */
  updateFrames(frames: FramesPayload): void {
    for (const [name, mesh] of this.capsules) {
      if (!(name in frames)) {
        // missing frame: hide the segment, leave a diagnostic
        console.warn(`studio: no frame for segment ${name}; hiding it`);
        mesh.visible = false;
      }
    }
    for (const [name, frame] of Object.entries(frames)) {
      let mesh = this.capsules.get(name);
      if (!mesh) {
        const geometry = new THREE.CapsuleGeometry(frame.radius, frame.length, 6, 14);
        const material = new THREE.MeshStandardMaterial({
          color: NEUTRAL.clone(),
          roughness: 0.55,
        });
        mesh = new THREE.Mesh(geometry, material);
        this.capsules.set(name, mesh);
        this.scene.add(mesh);
      }
      mesh.visible = true;
      const rot = new THREE.Matrix3().fromArray(frame.rot).transpose(); // row->col major
      const pos = new THREE.Vector3(...frame.pos);
      const shift = new THREE.Vector3(...frame.shift).applyMatrix3(rot);
      const dir = new THREE.Vector3(...frame.axis).applyMatrix3(rot).normalize();
      const start = pos.clone().add(shift);
      const mid = start.clone().addScaledVector(dir, frame.length / 2);
      mesh.position.copy(mid);
      mesh.quaternion.setFromUnitVectors(Y_AXIS, dir);
    }
  }

  /** Tint segments from a live-method color payload (null = neutral). */
  updateColors(colors: LiveColors | null): void {
    for (const [name, mesh] of this.capsules) {
      const material = mesh.material as THREE.MeshStandardMaterial;
      const entry = colors?.segments[baseName(name)];
      if (entry) {
        material.color.setRGB(
          entry.rgb[0] / 255,
          entry.rgb[1] / 255,
          entry.rgb[2] / 255,
        );
      } else {
        material.color.copy(NEUTRAL);
      }
    }
  }

  addScene(upload: SceneUploadResponse, wireframe = false): void {
    const geometry = new THREE.BufferGeometry();
    geometry.setAttribute(
      "position",
      new THREE.Float32BufferAttribute(upload.vertices.flat(), 3),
    );
    geometry.setIndex(upload.faces.flat());
    geometry.computeVertexNormals();
    const mesh = new THREE.Mesh(
      geometry,
      new THREE.MeshStandardMaterial({
        color: 0x5a7d9a,
        roughness: 0.9,
        wireframe,
        side: THREE.DoubleSide,
      }),
    );
    this.sceneMeshes.push(mesh);
    this.scene.add(mesh);
  }

  setWireframe(on: boolean): void {
    for (const mesh of this.sceneMeshes) {
      (mesh.material as THREE.MeshStandardMaterial).wireframe = on;
    }
  }

  showGizmo(at: Vec3 | null): void {
    if (at === null) {
      this.gizmo.visible = false;
    } else {
      this.gizmo.visible = true;
      this.gizmo.position.set(...at);
    }
  }

  /** World position of a pointer event on the camera-facing plane through
   * `anchor` (the standard drag unprojection). */
  unproject(clientX: number, clientY: number, anchor: Vec3): Vec3 {
    const rect = this.renderer.domElement.getBoundingClientRect();
    const ndc = new THREE.Vector2(
      ((clientX - rect.left) / rect.width) * 2 - 1,
      -((clientY - rect.top) / rect.height) * 2 + 1,
    );
    const raycaster = new THREE.Raycaster();
    raycaster.setFromCamera(ndc, this.camera);
    const normal = new THREE.Vector3();
    this.camera.getWorldDirection(normal);
    const plane = new THREE.Plane().setFromNormalAndCoplanarPoint(
      normal,
      new THREE.Vector3(...anchor),
    );
    const hit = new THREE.Vector3();
    raycaster.ray.intersectPlane(plane, hit);
    return [hit.x, hit.y, hit.z];
  }

  /** True when the pointer ray passes near the world point (gizmo pick). */
  picks(clientX: number, clientY: number, point: Vec3, radius = 0.08): boolean {
    const rect = this.renderer.domElement.getBoundingClientRect();
    const ndc = new THREE.Vector2(
      ((clientX - rect.left) / rect.width) * 2 - 1,
      -((clientY - rect.top) / rect.height) * 2 + 1,
    );
    const raycaster = new THREE.Raycaster();
    raycaster.setFromCamera(ndc, this.camera);
    return (
      raycaster.ray.distanceToPoint(new THREE.Vector3(...point)) <= radius
    );
  }

  setControlsEnabled(on: boolean): void {
    this.controls.enabled = on;
  }

  render(): void {
    this.controls.update();
    this.renderer.render(this.scene, this.camera);
    this.redraws += 1;
  }
}
