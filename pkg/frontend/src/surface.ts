// The touch surface: a blank full-size area (eyes-free, nothing to see) that
// forwards every pointer-down as a tap in layout screen units. A debug
// toggle overlays the region centers and activation radii for sighted
// inspection; it sends nothing on its own.

import { Geometry, LayoutMessage } from "./protocol.js";

export interface SurfaceRect {
    left: number;
    top: number;
    width: number;
    height: number;
}

/** Map client coordinates onto layout screen units, clamped in-bounds. */
export function normalizePoint(
    rect: SurfaceRect,
    clientX: number,
    clientY: number,
    geometry: Geometry,
): { x: number; y: number } {
    const clamp = (v: number, hi: number) => Math.min(Math.max(v, 0), hi);
    const x = ((clientX - rect.left) / rect.width) * geometry.width;
    const y = ((clientY - rect.top) / rect.height) * geometry.height;
    return { x: clamp(x, geometry.width), y: clamp(y, geometry.height) };
}

export class Surface {
    private layout: LayoutMessage | null = null;
    private overlay: HTMLElement | null = null;

    constructor(
        private el: HTMLElement,
        private onTap: (x: number, y: number) => void,
    ) {
        // pointerdown covers touch and mouse alike
        el.addEventListener("pointerdown", (ev) => {
            if (!this.layout) return;
            ev.preventDefault();
            const rect = el.getBoundingClientRect();
            const p = normalizePoint(rect, ev.clientX, ev.clientY, this.layout.geometry);
            this.onTap(p.x, p.y);
        });
    }

    setLayout(layout: LayoutMessage): void {
        this.layout = layout;
        const { width, height } = layout.geometry;
        this.el.style.aspectRatio = `${width} / ${height}`;
        if (this.overlay) {
            this.hideDebug();
            this.showDebug();
        }
    }

    get debugVisible(): boolean {
        return this.overlay !== null;
    }

    toggleDebug(): boolean {
        if (this.overlay) this.hideDebug();
        else this.showDebug();
        return this.debugVisible;
    }

    private showDebug(): void {
        if (!this.layout || this.overlay) return;
        const { geometry, regions, parameters, keymap } = this.layout;
        const overlay = document.createElement("div");
        overlay.className = "debug-overlay";
        for (const region of regions) {
            const [cx, cy] = region.center;
            const marker = document.createElement("div");
            marker.className = "region-marker";
            const dx = (parameters.activation_radius / geometry.width) * 100;
            const dy = (parameters.activation_radius / geometry.height) * 100;
            marker.style.left = `${(cx / geometry.width) * 100 - dx}%`;
            marker.style.top = `${(cy / geometry.height) * 100 - dy}%`;
            marker.style.width = `${2 * dx}%`;
            marker.style.height = `${2 * dy}%`;
            const label = document.createElement("span");
            label.textContent = keymap[region.id] ?? region.id;
            marker.appendChild(label);
            overlay.appendChild(marker);
        }
        this.el.appendChild(overlay);
        this.overlay = overlay;
    }

    private hideDebug(): void {
        this.overlay?.remove();
        this.overlay = null;
    }
}
